#include "musynth/errors.hpp"
#include "musynth/mus.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace musynth {

StateVector gaussian_packet(const Grid1D &grid, double x0, double k, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(x0) || !std::isfinite(k)) {
    throw DegenerateInputError("gaussian_packet needs finite x0, k and sigma > 0");
  }
  if (grid.h() > sigma / 4.0) {
    std::ostringstream msg;
    msg << "grid spacing " << grid.h() << " does not resolve sigma " << sigma
        << " (need h <= sigma/4 = " << sigma / 4.0 << ")";
    throw ResolutionError(msg.str());
  }
  if (grid.x_min() > x0 - 8.0 * sigma || grid.x_max() < x0 + 8.0 * sigma) {
    std::ostringstream msg;
    msg << "grid [" << grid.x_min() << ", " << grid.x_max() << "] does not contain ["
        << x0 - 8.0 * sigma << ", " << x0 + 8.0 * sigma << "]";
    throw ResolutionError(msg.str());
  }
  ComplexVector v(grid.n());
  const double inv_four_var = 1.0 / (4.0 * sigma * sigma);
  for (std::size_t i = 0; i < grid.n(); ++i) {
    const double x = grid.x(i);
    const double dx = x - x0;
    v[i] = std::polar(std::exp(-dx * dx * inv_four_var), k * x);
  }
  return StateVector::normalize(std::move(v));
}

GaussianCheck verify_gaussian(const Grid1D &grid, double x0, double k, double sigma,
                              Boundary boundary, double tol) {
  const StateVector psi = gaussian_packet(grid, x0, k, sigma);
  const Observable x = position_operator(grid);
  const Observable p = momentum_operator(grid, boundary);

  GaussianCheck out;
  out.verdict = check_mus(psi, x, p, tol);
  out.expected_lambda = -2.0 * sigma * sigma;
  if (out.verdict.lambda) {
    out.lambda_rel_error =
        std::abs(*out.verdict.lambda - out.expected_lambda) / std::abs(out.expected_lambda);
  } else {
    out.lambda_rel_error = std::numeric_limits<double>::infinity();
  }

  // (x + 2 sigma^2 d/dx) psi = (x0 + 2 i sigma^2 k) psi, with d/dx -> D = iP.
  out.expected_eigenvalue = cplx{x0, 2.0 * sigma * sigma * k};
  const ComplexVector d_psi = I_UNIT * (p.matrix() * psi.vector());
  const ComplexVector lhs = x.matrix() * psi.vector() + cplx{2.0 * sigma * sigma} * d_psi;
  out.eigen_residual =
      norm(lhs - out.expected_eigenvalue * psi.vector()) / std::abs(out.expected_eigenvalue);
  return out;
}

} // namespace musynth
