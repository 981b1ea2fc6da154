// Cyclic Jacobi for complex Hermitian matrices. Each rotation first removes
// the phase of the pivot entry, then applies a real plane rotation, so every
// step is unitary and the accumulated eigenvectors stay orthonormal to
// working precision.

#include "musynth/errors.hpp"
#include "musynth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace musynth {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix &a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      if (r != c) {
        sum += std::norm(a(r, c));
      }
    }
  }
  return std::sqrt(sum);
}

// Columns p, q of `a` <- a * W, with W = [[w_pp, w_pq], [w_qp, w_qq]].
void rotate_columns(ComplexMatrix &a, std::size_t p, std::size_t q, cplx w_pp, cplx w_pq,
                    cplx w_qp, cplx w_qq) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const cplx x = a(k, p);
    const cplx y = a(k, q);
    a(k, p) = x * w_pp + y * w_qp;
    a(k, q) = x * w_pq + y * w_qq;
  }
}

// Rows p, q of `a` <- W^dagger * a.
void rotate_rows(ComplexMatrix &a, std::size_t p, std::size_t q, cplx w_pp, cplx w_pq,
                 cplx w_qp, cplx w_qq) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const cplx x = a(p, k);
    const cplx y = a(q, k);
    a(p, k) = std::conj(w_pp) * x + std::conj(w_qp) * y;
    a(q, k) = std::conj(w_pq) * x + std::conj(w_qq) * y;
  }
}

} // namespace

std::vector<EigenPair> hermitian_eigenpairs(const ComplexMatrix &m) {
  require_hermitian(m);
  const std::size_t n = m.dim();

  // Work on the exactly Hermitian part so round-off in the input cannot leak
  // imaginary parts onto the diagonal.
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= eps * scale) {
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= eps * eps * scale) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const cplx phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        // W = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx w_pp = c;
        const cplx w_pq = s;
        const cplx w_qp = -s * std::conj(phase);
        const cplx w_qq = c * std::conj(phase);

        rotate_columns(a, p, q, w_pp, w_pq, w_qp, w_qq);
        rotate_rows(a, p, q, w_pp, w_pq, w_qp, w_qq);
        rotate_columns(v, p, q, w_pp, w_pq, w_qp, w_qq);

        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    if (sweep + 1 == kMaxSweeps) {
      throw ConvergenceError("Hermitian Jacobi iteration did not converge",
                             off_diagonal_norm(a));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  for (std::size_t idx : order) {
    ComplexVector vec(n);
    for (std::size_t k = 0; k < n; ++k) {
      vec[k] = v(k, idx);
    }
    pairs.push_back({cplx{a(idx, idx).real(), 0.0}, canonical_phase(std::move(vec))});
  }
  return pairs;
}

} // namespace musynth
