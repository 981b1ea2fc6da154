#pragma once

// Minimum uncertainty states. A normalized psi with spread(B) > 0 saturates
// spread(A) * spread(B) >= |<C>| / 2 exactly when
//
//     (A - a) psi = i lambda (B - b) psi
//
// for a real lambda with |lambda| = spread(A) / spread(B) and sign opposite
// to <C>. Equivalently psi is an eigenvector of K = A - i lambda B with
// eigenvalue a - i lambda b, which is how families of such states are built.

#include "musynth/observables.hpp"
#include "musynth/uncertainty.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace musynth {

enum class MusReason { ok, nonzero_defect, delta_b_zero, residual_exceeds_tol };

std::string_view to_string(MusReason r);
MusReason parse_mus_reason(std::string_view text);

struct MusVerdict {
  bool is_mus = false;
  std::optional<double> lambda;
  double condition_residual = 0.0;
  double gap1 = 0.0; ///< spread(A) spread(B) - |w|
  double gap2 = 0.0; ///< |w| - |Im w|
  UncertaintyReport report;
  MusReason reason = MusReason::nonzero_defect;
};

struct MusCandidate {
  StateVector state;
  cplx mu;
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  MusVerdict verdict;
  /// lambda == 0: the candidate is a Hermitian eigenvector of A, not a
  /// solution of the non-Hermitian problem.
  bool via_hermitian = false;
};

struct MusGroup {
  double lambda = 0.0;
  std::vector<MusCandidate> candidates;
  std::optional<std::string> error; ///< set when the solve at this lambda failed
};

struct MusFamily {
  std::vector<double> lambdas;
  std::vector<MusGroup> groups; ///< one per lambda, same order
};

inline constexpr double kDefaultMusTol = 1e-8;

/// |(A - a) psi - i lambda (B - b) psi|.
double condition_residual(const StateVector &psi, const Observable &a, const Observable &b,
                          double lambda);

/// lambda = -sign(c) * spread(A) / spread(B); 0 when spread(A) <= tol.
/// Throws DegenerateInputError if spread(B) <= tol and SignAmbiguousError
/// if |c| <= tol while spread(A) > tol.
double lambda_of_state(const StateVector &psi, const Observable &a, const Observable &b,
                       double tol = kDefaultMusTol);

struct InequalityGaps {
  double gap1 = 0.0;
  double gap2 = 0.0;
  cplx w; ///< <(A - a) psi, (B - b) psi>
};

InequalityGaps inequality_chain(const StateVector &psi, const Observable &a, const Observable &b);

/// Decides MUS membership. Never throws for degenerate input; the verdict's
/// reason field records which case applied.
MusVerdict check_mus(const StateVector &psi, const Observable &a, const Observable &b,
                     double tol = kDefaultMusTol);

/// A - i lambda B.
ComplexMatrix build_k_operator(const Observable &a, const Observable &b, double lambda);

/// Verified MUS among the eigenvectors of A - i lambda B. lambda == 0 falls
/// back to Hermitian eigenvectors of A (flagged via_hermitian).
std::vector<MusCandidate> find_mus_at_lambda(const Observable &a, const Observable &b,
                                             double lambda, double tol = kDefaultMusTol);

/// find_mus_at_lambda over a grid. Each group is de-duplicated: states with
/// overlap >= 1 - 1e-8 collapse to the first one found.
MusFamily sweep_lambda(const Observable &a, const Observable &b, const std::vector<double> &grid,
                       double tol = kDefaultMusTol);

/// Normalized samples of exp[i k x - (x - x0)^2 / (4 sigma^2)] on the grid.
/// Throws ResolutionError unless h <= sigma / 4 and the grid covers
/// [x0 - 8 sigma, x0 + 8 sigma].
StateVector gaussian_packet(const Grid1D &grid, double x0, double k, double sigma);

struct GaussianCheck {
  MusVerdict verdict;
  double expected_lambda = 0.0;     ///< -2 sigma^2
  double lambda_rel_error = 0.0;    ///< |lambda - expected| / |expected|, lambda from the verdict
  cplx expected_eigenvalue;         ///< x0 + 2 i sigma^2 k
  double eigen_residual = 0.0;      ///< |(X + 2 sigma^2 D) psi - ev psi| / |ev|
};

GaussianCheck verify_gaussian(const Grid1D &grid, double x0, double k, double sigma,
                              Boundary boundary = Boundary::dirichlet, double tol = 1e-3);

} // namespace musynth
