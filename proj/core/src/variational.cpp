#include "musynth/variational.hpp"

#include "musynth/errors.hpp"

#include <cmath>
#include <numbers>

namespace musynth {

double defect_objective(const StateVector &psi, const Observable &a, const Observable &b) {
  const UncertaintyReport r = robertson_report(psi, a, b);
  return r.product * r.product - 0.25 * r.c * r.c;
}

ComplexVector defect_gradient(const StateVector &psi, const Observable &a, const Observable &b) {
  const ComplexMatrix &ma = a.matrix();
  const ComplexMatrix &mb = b.matrix();
  const ComplexVector &v = psi.vector();

  const ComplexVector a_psi = ma * v;
  const ComplexVector b_psi = mb * v;
  const double a_mean = inner(v, a_psi).real();
  const double b_mean = inner(v, b_psi).real();
  const ComplexVector dev_a = a_psi - cplx{a_mean} * v;
  const ComplexVector dev_b = b_psi - cplx{b_mean} * v;
  const double var_a = inner(dev_a, dev_a).real();
  const double var_b = inner(dev_b, dev_b).real();
  const double c = 2.0 * inner(a_psi, b_psi).imag();

  // grad Var(A) = 2 (A - a)^2 psi up to a radial term; grad <C> = 2 C psi,
  // C psi = -i (A B psi - B A psi).
  const ComplexVector grad_va = cplx{2.0} * (ma * dev_a - cplx{a_mean} * dev_a);
  const ComplexVector grad_vb = cplx{2.0} * (mb * dev_b - cplx{b_mean} * dev_b);
  const ComplexVector c_psi = -I_UNIT * (ma * b_psi - mb * a_psi);

  ComplexVector g = cplx{var_b} * grad_va + cplx{var_a} * grad_vb - cplx{c} * c_psi;
  g -= cplx{inner(v, g).real()} * v;
  return g;
}

namespace {

// Uniform in (0, 1) from the top 53 bits.
double open_uniform(std::mt19937_64 &rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace

StateVector random_state(std::size_t dim, std::mt19937_64 &rng) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double u1 = open_uniform(rng);
    const double u2 = open_uniform(rng);
    v[i] = std::polar(std::sqrt(-2.0 * std::log(u1)), 2.0 * std::numbers::pi * u2);
  }
  return StateVector::normalize(std::move(v));
}

StateVector random_start(std::size_t dim, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  return random_state(dim, rng);
}

MinimizeResult minimize_defect(const Observable &a, const Observable &b, const StateVector &psi0,
                               const MinimizeOptions &opts) {
  if (opts.max_iters < 1 || !(opts.step > 0.0)) {
    throw DegenerateInputError("minimize_defect needs max_iters >= 1 and step > 0");
  }
  StateVector psi = psi0;
  double f = defect_objective(psi, a, b);
  int iter = 0;
  constexpr int kMaxHalvings = 60;

  while (iter < opts.max_iters && f > opts.defect_tol) {
    const ComplexVector g = defect_gradient(psi, a, b);
    if (norm(g) <= opts.grad_tol) {
      break;
    }
    double step = opts.step;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h, step *= 0.5) {
      ComplexVector trial = psi.vector() - cplx{step} * g;
      if (norm(trial) == 0.0) {
        continue;
      }
      StateVector next = StateVector::normalize(std::move(trial));
      const double f_next = defect_objective(next, a, b);
      if (f_next < f) {
        psi = std::move(next);
        f = f_next;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      break;
    }
    ++iter;
  }

  MinimizeResult out{psi, f, iter, f <= opts.defect_tol, check_mus(psi, a, b, opts.verdict_tol)};
  return out;
}

std::vector<MinimizeResult> minimize_multistart(const Observable &a, const Observable &b,
                                                std::size_t starts, const MinimizeOptions &opts) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: '" + a.name() + "' and '" + b.name() +
                         "' differ in size");
  }
  std::vector<MinimizeResult> results;
  results.reserve(starts);
  for (std::size_t i = 0; i < starts; ++i) {
    results.push_back(minimize_defect(a, b, random_start(a.dim(), opts.seed, i), opts));
  }
  return results;
}

} // namespace musynth
