#include <doctest.h>

#include "musynth/errors.hpp"
#include "musynth/mus.hpp"
#include "musynth/uncertainty.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace musynth;
using namespace musynth::testing;

namespace {

Observable named(const char *name, const ComplexMatrix &m) { return Observable(name, m); }

StateVector plus_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector(ComplexVector{s, s});
}

} // namespace

TEST_CASE("expectation examples") {
  const Observable sz = named("sz", pauli_z());
  const Observable sx = named("sx", pauli_x());
  CHECK(expectation(basis_state(2, 0), sz) == 1.0);
  CHECK(std::abs(expectation(plus_state(), sz)) < 1e-16);
  CHECK(expectation(plus_state(), sx) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(expectation(basis_state(3, 0), sz), DimensionError);
}

TEST_CASE("expectation rejects a complex value") {
  // Hermitian within the constructor's tolerance, but a large enough
  // anti-Hermitian part to show up in <psi, A psi> once tolerances are tightened.
  const Observable slightly("m", ComplexMatrix{{0.0, cplx{0.0, 1e-11}}, {0.0, 0.0}});
  const StateVector psi = plus_state();
  CHECK_NOTHROW(expectation(psi, slightly));
  CHECK_THROWS_AS(expectation(psi, slightly, 1e-13), HermiticityError);
}

TEST_CASE("uncertainty examples") {
  const Observable sz = named("sz", pauli_z());
  const Observable sx = named("sx", pauli_x());
  CHECK(uncertainty_of(basis_state(2, 0), sz) == 0.0);
  CHECK(uncertainty_of(basis_state(2, 0), sx) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("robertson report on spin up for (Jx, Jy)") {
  const auto s = spin_operators(1);
  const UncertaintyReport r = robertson_report(basis_state(2, 0), s.jx, s.jy);
  CHECK(std::abs(r.a) < 1e-15);
  CHECK(std::abs(r.b) < 1e-15);
  CHECK(r.c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.delta_a == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.delta_b == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.product == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r.bound == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(r.defect) < 1e-15);
}

TEST_CASE("robertson report for a self pair at an eigenvector") {
  const auto s = spin_operators(2);
  const StateVector e = basis_state(3, 0);
  const UncertaintyReport r = robertson_report(e, s.jz, s.jz);
  CHECK(r.a == 1.0);
  CHECK(r.b == 1.0);
  CHECK(r.c == 0.0);
  CHECK(r.delta_a == 0.0);
  CHECK(r.delta_b == 0.0);
  CHECK(r.product == 0.0);
  CHECK(r.bound == 0.0);
  CHECK(r.defect == 0.0);
}

TEST_CASE("robertson report: c matches the explicit commutator route") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 10);
    const Observable a = random_observable(n, rng, "A");
    const Observable b = random_observable(n, rng, "B");
    const StateVector psi = StateVector::normalize(random_vector(n, rng));
    const Observable c("C", commutator_c(a.matrix(), b.matrix()));
    const UncertaintyReport r = robertson_report(psi, a, b);
    CHECK(std::abs(r.c - expectation(psi, c)) <= 1e-12 * (1.0 + std::abs(r.c)));
    CHECK(r.product == r.delta_a * r.delta_b);
    CHECK(r.bound == 0.5 * std::abs(r.c));
    CHECK(r.defect == r.product - r.bound);
  }
}

TEST_CASE("Robertson inequality holds on random samples") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(uniform(rng, 0.0, 31.0));
    const Observable a = random_observable(n, rng, "A");
    const Observable b = random_observable(n, rng, "B");
    const StateVector psi = StateVector::normalize(random_vector(n, rng));
    CHECK(robertson_report(psi, a, b).defect >= -1e-9);
  }
}

TEST_CASE("global phase invariance of the report") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    const Observable a = random_observable(n, rng, "A");
    const Observable b = random_observable(n, rng, "B");
    const StateVector psi = StateVector::normalize(random_vector(n, rng));
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const UncertaintyReport r0 = robertson_report(psi, a, b);
    const UncertaintyReport r1 = robertson_report(psi.with_phase(theta), a, b);
    CHECK(std::abs(r0.a - r1.a) <= 1e-12);
    CHECK(std::abs(r0.b - r1.b) <= 1e-12);
    CHECK(std::abs(r0.c - r1.c) <= 1e-12);
    CHECK(std::abs(r0.delta_a - r1.delta_a) <= 1e-12);
    CHECK(std::abs(r0.delta_b - r1.delta_b) <= 1e-12);
    CHECK(std::abs(r0.product - r1.product) <= 1e-12);
    CHECK(std::abs(r0.bound - r1.bound) <= 1e-12);
    CHECK(std::abs(r0.defect - r1.defect) <= 1e-12);
  }
}

TEST_CASE("positive scaling of A") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    const Observable a = random_observable(n, rng, "A");
    const Observable b = random_observable(n, rng, "B");
    const double s = uniform(rng, 0.1, 10.0);
    const Observable sa("sA", cplx{s} * a.matrix());
    const StateVector psi = StateVector::normalize(random_vector(n, rng));
    const UncertaintyReport r0 = robertson_report(psi, a, b);
    const UncertaintyReport r1 = robertson_report(psi, sa, b);
    CHECK(std::abs(r1.a - s * r0.a) <= 1e-12 * (1.0 + std::abs(s * r0.a)));
    CHECK(std::abs(r1.c - s * r0.c) <= 1e-12 * (1.0 + std::abs(s * r0.c)));
    CHECK(std::abs(r1.delta_a - s * r0.delta_a) <= 1e-12 * (1.0 + s * r0.delta_a));
    CHECK((r1.defect >= 0.0) == (r0.defect >= 0.0));
  }
}

TEST_CASE("spread squared equals <A^2> - a^2") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 12);
    const Observable a = random_observable(n, rng, "A");
    const Observable a2("A2", a.matrix() * a.matrix());
    const StateVector psi = StateVector::normalize(random_vector(n, rng));
    const double mean = expectation(psi, a);
    const double spread = uncertainty_of(psi, a);
    CHECK(std::abs(spread * spread - (expectation(psi, a2) - mean * mean)) <= 1e-10);
  }
}

TEST_CASE("spread vanishes exactly at eigenvectors") {
  std::mt19937_64 rng(16);
  const Observable a = random_observable(6, rng, "A");
  for (auto &pair : hermitian_eigenpairs(a.matrix())) {
    CHECK(uncertainty_of(StateVector::normalize(pair.vector), a) <= 1e-12);
  }
}

TEST_CASE("schwarz_gap examples") {
  const ComplexVector phi{0.6, cplx{0.0, 0.8}};
  const SchwarzWitness eq = schwarz_gap(cplx{0.0, 2.0} * phi, phi);
  CHECK(std::abs(eq.gap) <= 1e-12);
  CHECK(eq.proportional);
  REQUIRE(eq.z.has_value());
  CHECK(std::abs(*eq.z - cplx{0.0, 2.0}) < 1e-15);

  const SchwarzWitness orth = schwarz_gap(ComplexVector{1.0, 0.0}, ComplexVector{0.0, 1.0});
  CHECK(orth.gap == 1.0);
  CHECK_FALSE(orth.proportional);
  CHECK_FALSE(orth.z.has_value());

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const SchwarzWitness w = schwarz_gap(random_vector(8, rng), random_vector(8, rng));
    CHECK(w.gap > 0.0);
    CHECK_FALSE(w.proportional);
  }

  CHECK_THROWS_AS(schwarz_gap(phi, ComplexVector{0.0, 0.0}), DegenerateInputError);
  CHECK_THROWS_AS(schwarz_gap(phi, ComplexVector{1.0}), DimensionError);
}
