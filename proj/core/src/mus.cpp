#include "musynth/mus.hpp"

#include "musynth/errors.hpp"

#include <cmath>
#include <sstream>

namespace musynth {

std::string_view to_string(MusReason r) {
  switch (r) {
  case MusReason::ok:
    return "ok";
  case MusReason::nonzero_defect:
    return "nonzero_defect";
  case MusReason::delta_b_zero:
    return "delta_b_zero";
  case MusReason::residual_exceeds_tol:
    return "residual_exceeds_tol";
  }
  return "nonzero_defect";
}

MusReason parse_mus_reason(std::string_view text) {
  for (auto r : {MusReason::ok, MusReason::nonzero_defect, MusReason::delta_b_zero,
                 MusReason::residual_exceeds_tol}) {
    if (to_string(r) == text) {
      return r;
    }
  }
  throw FormatError("unknown MUS reason '" + std::string(text) + "'");
}

double condition_residual(const StateVector &psi, const Observable &a, const Observable &b,
                          double lambda) {
  const ComplexVector dev_a = deviation(psi, a);
  const ComplexVector dev_b = deviation(psi, b);
  return norm(dev_a - cplx{0.0, lambda} * dev_b);
}

double lambda_of_state(const StateVector &psi, const Observable &a, const Observable &b,
                       double tol) {
  const UncertaintyReport r = robertson_report(psi, a, b);
  if (r.delta_b <= tol) {
    throw DegenerateInputError("lambda is undefined: spread of '" + b.name() + "' is zero");
  }
  if (r.delta_a <= tol) {
    return 0.0;
  }
  if (std::abs(r.c) <= tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sign of lambda is undefined: <C> = " << r.c << " vanishes while spread of '"
        << a.name() << "' is " << r.delta_a;
    throw SignAmbiguousError(msg.str());
  }
  const double magnitude = r.delta_a / r.delta_b;
  return r.c > 0.0 ? -magnitude : magnitude;
}

InequalityGaps inequality_chain(const StateVector &psi, const Observable &a,
                                const Observable &b) {
  const ComplexVector dev_a = deviation(psi, a);
  const ComplexVector dev_b = deviation(psi, b);
  InequalityGaps g;
  g.w = inner(dev_a, dev_b);
  g.gap1 = norm(dev_a) * norm(dev_b) - std::abs(g.w);
  g.gap2 = std::abs(g.w) - std::abs(g.w.imag());
  return g;
}

MusVerdict check_mus(const StateVector &psi, const Observable &a, const Observable &b,
                     double tol) {
  MusVerdict v;
  v.report = robertson_report(psi, a, b);
  const InequalityGaps gaps = inequality_chain(psi, a, b);
  v.gap1 = gaps.gap1;
  v.gap2 = gaps.gap2;
  const UncertaintyReport &r = v.report;

  if (r.delta_b <= tol) {
    v.is_mus = false;
    v.reason = MusReason::delta_b_zero;
    v.condition_residual = r.delta_a;
    return v;
  }

  double lambda = 0.0;
  bool sign_ambiguous = false;
  if (r.delta_a <= tol) {
    lambda = 0.0;
  } else if (std::abs(r.c) <= tol) {
    // Try both signs; the state can only pass if the defect is also tiny.
    sign_ambiguous = true;
    const double magnitude = r.delta_a / r.delta_b;
    const double res_neg = condition_residual(psi, a, b, -magnitude);
    const double res_pos = condition_residual(psi, a, b, magnitude);
    lambda = res_neg <= res_pos ? -magnitude : magnitude;
  } else {
    const double magnitude = r.delta_a / r.delta_b;
    lambda = r.c > 0.0 ? -magnitude : magnitude;
  }

  v.condition_residual = condition_residual(psi, a, b, lambda);
  const double scale = 1.0 + a.matrix().norm_inf() + std::abs(lambda) * b.matrix().norm_inf();
  const bool residual_ok = v.condition_residual <= tol * scale;
  const bool defect_ok = r.defect <= tol * (1.0 + r.bound);

  v.is_mus = residual_ok && defect_ok;
  if (v.is_mus) {
    v.reason = MusReason::ok;
  } else if (!defect_ok) {
    v.reason = MusReason::nonzero_defect;
  } else {
    v.reason = MusReason::residual_exceeds_tol;
  }
  if (!sign_ambiguous || v.is_mus) {
    v.lambda = lambda;
  }
  return v;
}

ComplexMatrix build_k_operator(const Observable &a, const Observable &b, double lambda) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: '" + a.name() + "' and '" + b.name() +
                         "' differ in size");
  }
  if (!std::isfinite(lambda)) {
    throw DegenerateInputError("lambda must be finite");
  }
  return a.matrix() - cplx{0.0, lambda} * b.matrix();
}

std::vector<MusCandidate> find_mus_at_lambda(const Observable &a, const Observable &b,
                                             double lambda, double tol) {
  std::vector<MusCandidate> out;
  if (lambda == 0.0) {
    if (a.dim() != b.dim()) {
      throw DimensionError("dimension mismatch: '" + a.name() + "' and '" + b.name() +
                           "' differ in size");
    }
    for (auto &pair : hermitian_eigenpairs(a.matrix())) {
      StateVector psi = StateVector::normalize(std::move(pair.vector));
      MusVerdict verdict = check_mus(psi, a, b, tol);
      if (!verdict.is_mus) {
        continue;
      }
      const double b_mean = verdict.report.b;
      out.push_back(MusCandidate{std::move(psi), pair.value, 0.0, pair.value.real(), b_mean,
                                 std::move(verdict), true});
    }
    return out;
  }

  const ComplexMatrix k = build_k_operator(a, b, lambda);
  const double residual_limit = tol * (1.0 + k.norm());
  for (auto &pair : general_eigenpairs(k)) {
    if (eigen_residual(k, pair) > residual_limit) {
      continue;
    }
    StateVector psi = StateVector::normalize(std::move(pair.vector));
    MusVerdict verdict = check_mus(psi, a, b, tol);
    if (!verdict.is_mus) {
      continue;
    }
    // mu = a - i lambda b
    const double a_mean = pair.value.real();
    const double b_mean = -pair.value.imag() / lambda;
    out.push_back(MusCandidate{std::move(psi), pair.value, lambda, a_mean, b_mean,
                               std::move(verdict), false});
  }
  return out;
}

namespace {

constexpr double kDuplicateOverlap = 1.0 - 1e-8;

void drop_duplicates(std::vector<MusCandidate> &cands) {
  std::vector<MusCandidate> kept;
  kept.reserve(cands.size());
  for (auto &c : cands) {
    bool duplicate = false;
    for (const auto &k : kept) {
      if (std::abs(inner(k.state.vector(), c.state.vector())) >= kDuplicateOverlap) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      kept.push_back(std::move(c));
    }
  }
  cands = std::move(kept);
}

} // namespace

MusFamily sweep_lambda(const Observable &a, const Observable &b, const std::vector<double> &grid,
                       double tol) {
  if (grid.empty()) {
    throw DegenerateInputError("lambda grid is empty");
  }
  for (double lambda : grid) {
    if (lambda == 0.0 || !std::isfinite(lambda)) {
      throw DegenerateInputError("lambda must be nonzero");
    }
  }
  MusFamily family;
  family.lambdas = grid;
  family.groups.reserve(grid.size());
  for (double lambda : grid) {
    MusGroup group;
    group.lambda = lambda;
    try {
      group.candidates = find_mus_at_lambda(a, b, lambda, tol);
      drop_duplicates(group.candidates);
    } catch (const ConvergenceError &e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << e.what() << " (best residual " << e.best_residual() << ")";
      group.error = msg.str();
    }
    family.groups.push_back(std::move(group));
  }
  return family;
}

} // namespace musynth
