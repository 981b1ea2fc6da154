#include <doctest.h>

#include "musynth/errors.hpp"
#include "musynth/mus.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace musynth;
using namespace musynth::testing;

namespace {

StateVector spin_up() { return basis_state(2, 0); }

// (cos pi/8, e^{i pi/4} sin pi/8): Bloch vector (1/2, 1/2, 1/sqrt2), not a
// MUS for (Jx, Jy). Values from tests/oracles/frozen_values.py.
StateVector skew_state() {
  const double t = std::numbers::pi / 8.0;
  return StateVector(ComplexVector{std::cos(t), std::polar(std::sin(t), std::numbers::pi / 4.0)});
}
constexpr double kSkewDefect = 0.010723304703363107;

// (cos pi/8, sin pi/8) lies in the x-z plane, which makes it a MUS for
// (Jx, Jy) with lambda = -DeltaA/DeltaB = -1/sqrt2.
StateVector xz_state() {
  const double t = std::numbers::pi / 8.0;
  return StateVector(ComplexVector{std::cos(t), std::sin(t)});
}

} // namespace

TEST_CASE("condition_residual examples") {
  const auto s = spin_operators(1);
  CHECK(condition_residual(spin_up(), s.jx, s.jy, -1.0) < 1e-15);
  CHECK(condition_residual(spin_up(), s.jx, s.jy, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  // Common eigenvector of A and B: both sides vanish for every lambda.
  const Observable z1("z1", ComplexMatrix::diagonal(std::vector<cplx>{1.0, 2.0}));
  const Observable z2("z2", ComplexMatrix::diagonal(std::vector<cplx>{-3.0, 5.0}));
  for (double lambda : {-2.0, 0.0, 0.7}) {
    CHECK(condition_residual(basis_state(2, 1), z1, z2, lambda) == 0.0);
  }
}

TEST_CASE("lambda_of_state") {
  const auto s = spin_operators(1);
  CHECK(lambda_of_state(spin_up(), s.jx, s.jy) == doctest::Approx(-1.0).epsilon(1e-15));

  // Eigenvector of A with nonzero spread of B gives lambda = 0.
  const auto s1 = spin_operators(2);
  CHECK(lambda_of_state(basis_state(3, 0), s1.jz, s1.jx) == 0.0);

  // Spread of B zero.
  CHECK_THROWS_AS(lambda_of_state(basis_state(3, 0), s1.jx, s1.jz), DegenerateInputError);

  // c = 0 with both spreads positive: <Jz> = 0 in the m = 0 state.
  CHECK_THROWS_AS(lambda_of_state(basis_state(3, 1), s1.jx, s1.jy), SignAmbiguousError);
}

TEST_CASE("inequality_chain examples") {
  const auto s = spin_operators(1);
  const InequalityGaps up = inequality_chain(spin_up(), s.jx, s.jy);
  CHECK(std::abs(up.gap1) < 1e-15);
  CHECK(std::abs(up.gap2) < 1e-15);

  const Observable sz("sz", pauli_z());
  const InequalityGaps self = inequality_chain(spin_up(), sz, sz);
  CHECK(self.gap1 == 0.0);
  CHECK(self.gap2 == 0.0);

  const InequalityGaps skew = inequality_chain(skew_state(), s.jx, s.jy);
  CHECK(std::abs(skew.gap1) < 1e-15);
  CHECK(skew.gap2 == doctest::Approx(kSkewDefect).epsilon(1e-12));

  const InequalityGaps xz = inequality_chain(xz_state(), s.jx, s.jy);
  CHECK(std::abs(xz.gap1) < 1e-15);
  CHECK(std::abs(xz.gap2) < 1e-15);
}

TEST_CASE("check_mus examples") {
  const auto s = spin_operators(1);
  const MusVerdict up = check_mus(spin_up(), s.jx, s.jy, 1e-9);
  CHECK(up.is_mus);
  CHECK(up.reason == MusReason::ok);
  REQUIRE(up.lambda.has_value());
  CHECK(*up.lambda == doctest::Approx(-1.0).epsilon(1e-12));

  const Observable sz("sz", pauli_z());
  const Observable sx("sx", pauli_x());
  const MusVerdict degenerate = check_mus(spin_up(), sz, sx, 1e-9);
  CHECK(degenerate.is_mus);
  REQUIRE(degenerate.lambda.has_value());
  CHECK(*degenerate.lambda == 0.0);
  CHECK(degenerate.report.product == 0.0);
  CHECK(degenerate.report.bound == 0.0);

  const MusVerdict skew = check_mus(skew_state(), s.jx, s.jy, 1e-9);
  CHECK_FALSE(skew.is_mus);
  CHECK(skew.reason == MusReason::nonzero_defect);
  CHECK(skew.report.defect == doctest::Approx(kSkewDefect).epsilon(1e-12));

  const MusVerdict xz = check_mus(xz_state(), s.jx, s.jy, 1e-9);
  CHECK(xz.is_mus);
  REQUIRE(xz.lambda.has_value());
  CHECK(*xz.lambda == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("check_mus degenerate reasons") {
  const auto s1 = spin_operators(2);
  // Spread of B zero.
  const MusVerdict db = check_mus(basis_state(3, 0), s1.jx, s1.jz);
  CHECK_FALSE(db.is_mus);
  CHECK(db.reason == MusReason::delta_b_zero);
  CHECK_FALSE(db.lambda.has_value());

  // c = 0 with both spreads positive: no MUS, and no lambda reported.
  const MusVerdict amb = check_mus(basis_state(3, 1), s1.jx, s1.jy);
  CHECK_FALSE(amb.is_mus);
  CHECK(amb.reason == MusReason::nonzero_defect);
  CHECK_FALSE(amb.lambda.has_value());
}

TEST_CASE("build_k_operator examples") {
  const auto s = spin_operators(1);
  CHECK(max_abs_diff(build_k_operator(s.jx, s.jy, 0.0), s.jx.matrix()) == 0.0);
  const ComplexMatrix jplus{{0.0, 1.0}, {0.0, 0.0}};
  const ComplexMatrix jminus{{0.0, 0.0}, {1.0, 0.0}};
  CHECK(max_abs_diff(build_k_operator(s.jx, s.jy, -1.0), jplus) < 1e-15);
  CHECK(max_abs_diff(build_k_operator(s.jx, s.jy, 1.0), jminus) < 1e-15);
  CHECK_THROWS_AS(build_k_operator(s.jx, spin_operators(2).jy, 1.0), DimensionError);
}

TEST_CASE("find_mus_at_lambda on spin 1/2") {
  const auto s = spin_operators(1);
  const auto minus = find_mus_at_lambda(s.jx, s.jy, -1.0);
  REQUIRE(minus.size() == 1);
  CHECK(std::abs(minus[0].state[0]) == doctest::Approx(1.0));
  CHECK(std::abs(minus[0].mu) < 1e-15);
  CHECK(std::abs(minus[0].a) < 1e-15);
  CHECK(std::abs(minus[0].b) < 1e-15);
  CHECK(minus[0].verdict.is_mus);
  CHECK_FALSE(minus[0].via_hermitian);

  const auto plus = find_mus_at_lambda(s.jx, s.jy, 1.0);
  REQUIRE(plus.size() == 1);
  CHECK(std::abs(plus[0].state[1]) == doctest::Approx(1.0));
  CHECK(plus[0].verdict.report.c == doctest::Approx(-0.5));
  REQUIRE(plus[0].verdict.lambda.has_value());
  CHECK(*plus[0].verdict.lambda == doctest::Approx(1.0));
}

TEST_CASE("find_mus_at_lambda on spin 1") {
  const auto s = spin_operators(2);
  const auto cands = find_mus_at_lambda(s.jx, s.jy, -0.5);
  CHECK(cands.size() == 3);
  for (const auto &c : cands) {
    CHECK(c.verdict.is_mus);
    CHECK(c.verdict.report.defect <= 1e-10);
    CHECK(std::abs(c.a - c.verdict.report.a) <= 1e-9);
    CHECK(std::abs(c.b - c.verdict.report.b) <= 1e-9);
    REQUIRE(c.verdict.lambda.has_value());
    CHECK(*c.verdict.lambda == doctest::Approx(-0.5).epsilon(1e-9));
  }
}

TEST_CASE("find_mus_at_lambda with lambda = 0 uses Hermitian eigenvectors of A") {
  const auto s = spin_operators(2);
  // At each eigenvector of Jz the spread of Jz and <Jy> both vanish.
  const auto cands = find_mus_at_lambda(s.jz, s.jx, 0.0);
  CHECK(cands.size() == 3);
  for (const auto &c : cands) {
    CHECK(c.via_hermitian);
    CHECK(c.lambda == 0.0);
    CHECK(c.verdict.is_mus);
  }
}

TEST_CASE("sweep_lambda") {
  const auto half = spin_operators(1);
  const MusFamily one = sweep_lambda(half.jx, half.jy, {-1.0});
  REQUIRE(one.groups.size() == 1);
  REQUIRE(one.groups[0].candidates.size() == 1);
  CHECK(std::abs(one.groups[0].candidates[0].state[0]) == doctest::Approx(1.0));

  const auto s = spin_operators(2);
  const std::vector<double> grid{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  const MusFamily fam = sweep_lambda(s.jx, s.jy, grid);
  CHECK(fam.lambdas == grid);
  REQUIRE(fam.groups.size() == grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    CHECK(fam.groups[g].lambda == grid[g]);
    CHECK_FALSE(fam.groups[g].error.has_value());
    CHECK_FALSE(fam.groups[g].candidates.empty());
    for (const auto &c : fam.groups[g].candidates) {
      CHECK(c.verdict.is_mus);
    }
  }

  CHECK_THROWS_AS(sweep_lambda(s.jx, s.jy, {}), DegenerateInputError);
  CHECK_THROWS_AS(sweep_lambda(s.jx, s.jy, {1.0, 0.0}), DegenerateInputError);
}

TEST_CASE("sufficiency: verified eigenvectors of A - i lambda B are MUS") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 15);
    const Observable a = random_observable(n, rng, "A");
    const Observable b = random_observable(n, rng, "B");
    double lambda = 0.0;
    while (std::abs(lambda) < 1e-3) {
      lambda = uniform(rng, -3.0, 3.0);
    }
    const ComplexMatrix k = build_k_operator(a, b, lambda);
    const auto pairs = general_eigenpairs(k);
    for (const auto &p : pairs) {
      const StateVector psi = StateVector::normalize(p.vector);
      const MusVerdict v = check_mus(psi, a, b, 1e-8);
      CHECK(v.is_mus);
      const UncertaintyReport &r = v.report;
      CHECK(std::abs(2.0 * lambda * lambda * r.delta_b * r.delta_b + lambda * r.c) <=
            1e-8 * (1.0 + std::abs(r.c)));
      CHECK(std::abs(r.delta_a - std::abs(lambda) * r.delta_b) <= 1e-8);
      // mu = a - i lambda b
      CHECK(std::abs(p.value.real() - r.a) <= 1e-9);
      CHECK(std::abs(-p.value.imag() / lambda - r.b) <= 1e-9);
      // necessity side: the state's own lambda reproduces the condition
      CHECK(condition_residual(psi, a, b, lambda_of_state(psi, a, b)) <= 1e-8);
    }
    CHECK(find_mus_at_lambda(a, b, lambda).size() == pairs.size());
  }
}

TEST_CASE("check_mus is invariant under a global phase") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const Observable a = random_observable(n, rng, "A");
    const Observable b = random_observable(n, rng, "B");
    const auto cands = find_mus_at_lambda(a, b, uniform(rng, 0.1, 2.0));
    const StateVector psi =
        cands.empty() ? StateVector::normalize(random_vector(n, rng)) : cands.front().state;
    const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const MusVerdict v0 = check_mus(psi, a, b);
    const MusVerdict v1 = check_mus(psi.with_phase(theta), a, b);
    CHECK(v0.is_mus == v1.is_mus);
    CHECK(v0.reason == v1.reason);
    CHECK(v0.lambda.has_value() == v1.lambda.has_value());
    if (v0.lambda && v1.lambda) {
      CHECK(std::abs(*v0.lambda - *v1.lambda) <= 1e-10);
    }
    CHECK(std::abs(v0.condition_residual - v1.condition_residual) <= 1e-10);
    CHECK(std::abs(v0.gap1 - v1.gap1) <= 1e-10);
    CHECK(std::abs(v0.gap2 - v1.gap2) <= 1e-10);
    CHECK(std::abs(v0.report.defect - v1.report.defect) <= 1e-10);
  }
}

TEST_CASE("MUS tolerance scales with the observables") {
  // Scaling A by s scales the residual by s; the verdict must not change.
  const auto s = spin_operators(2);
  const auto cands = find_mus_at_lambda(s.jx, s.jy, -0.5);
  REQUIRE_FALSE(cands.empty());
  for (double scale : {1e-3, 1.0, 1e3, 1e6}) {
    const Observable big("sJx", cplx{scale} * s.jx.matrix());
    for (const auto &c : cands) {
      CHECK(check_mus(c.state, big, s.jy).is_mus);
    }
  }
}

TEST_CASE("gaussian_packet preconditions and moments") {
  const double x0 = 1.0, k = 2.0, sigma = 0.7;
  CHECK_THROWS_AS(gaussian_packet(Grid1D(8, -6.0, 8.0), x0, k, sigma), ResolutionError);
  CHECK_THROWS_AS(gaussian_packet(Grid1D(2048, -3.0, 8.0), x0, k, sigma), ResolutionError);
  CHECK_THROWS_AS(gaussian_packet(Grid1D(2048, -6.0, 8.0), x0, k, -1.0), DegenerateInputError);

  const Grid1D grid(1024, x0 - 10.0 * sigma, x0 + 10.0 * sigma);
  REQUIRE(grid.h() <= sigma / 50.0);
  const StateVector psi = gaussian_packet(grid, x0, k, sigma);
  CHECK(std::abs(norm(psi.vector()) - 1.0) <= 1e-12);
  const Observable x = position_operator(grid);
  const Observable p = momentum_operator(grid, Boundary::periodic);
  CHECK(std::abs(expectation(psi, x) - x0) <= 1e-6);
  CHECK(std::abs(expectation(psi, p) - k) <= 1e-3);
  CHECK(std::abs(uncertainty_of(psi, x) - sigma) <= 1e-3 * sigma);

  const UncertaintyReport r = robertson_report(psi, x, p);
  CHECK(std::abs(r.delta_b - 1.0 / (2.0 * sigma)) <= 1e-3 / (2.0 * sigma));
  CHECK(std::abs(r.bound - 0.5) <= 1e-3);
}

TEST_CASE("verify_gaussian reproduces lambda = -2 sigma^2 with second-order residual") {
  const double x0 = 1.0, k = 2.0, sigma = 0.7;
  const double lo = x0 - 10.0 * sigma, hi = x0 + 10.0 * sigma;
  const GaussianCheck coarse = verify_gaussian(Grid1D(513, lo, hi), x0, k, sigma);
  const GaussianCheck fine = verify_gaussian(Grid1D(1025, lo, hi), x0, k, sigma);
  CHECK(coarse.verdict.is_mus);
  CHECK(fine.verdict.is_mus);
  CHECK(fine.expected_lambda == doctest::Approx(-0.98));
  REQUIRE(fine.verdict.lambda.has_value());
  CHECK(fine.lambda_rel_error <= 1e-3);
  CHECK(fine.eigen_residual <= 1e-3);
  const double ratio = coarse.eigen_residual / fine.eigen_residual;
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}
