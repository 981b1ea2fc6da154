// General complex eigensolver.
//
//   1. Householder reduction to upper Hessenberg form, M = Q H Q^dagger.
//   2. Single-shift complex QR sweeps (Wilkinson shift, exceptional shifts
//      every 10 stalled iterations) until H is upper triangular, T.
//   3. Eigenvectors of T by back-substitution, mapped back through the
//      accumulated unitary.
//   4. Each vector is checked against the original matrix; if the residual
//      is not small enough a few steps of inverse iteration polish it.
//   5. Within a cluster of (numerically) equal eigenvalues only linearly
//      independent vectors are kept, so a Jordan block contributes exactly
//      one eigenvector instead of near-copies of it.

#include "musynth/errors.hpp"
#include "musynth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace musynth {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterPerEigenvalue = 60;
constexpr double kResidualRelTol = 1e-8;
constexpr int kRefineSteps = 3;

struct Givens {
  double c = 1.0;
  cplx s{};
};

// G = [[c, s], [-conj(s), c]] with G * (a, b)^T = (r, 0)^T.
Givens make_givens(cplx a, cplx b) {
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  if (abs_b == 0.0) {
    return {1.0, cplx{}};
  }
  if (abs_a == 0.0) {
    return {0.0, std::conj(b) / abs_b};
  }
  const double rho = std::hypot(abs_a, abs_b);
  return {abs_a / rho, (a / abs_a) * std::conj(b) / rho};
}

// Rows i, i+1 <- G * rows.
void apply_left(ComplexMatrix &t, std::size_t i, const Givens &g) {
  for (std::size_t k = 0; k < t.dim(); ++k) {
    const cplx x = t(i, k);
    const cplx y = t(i + 1, k);
    t(i, k) = g.c * x + g.s * y;
    t(i + 1, k) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns i, i+1 <- columns * G^dagger.
void apply_right(ComplexMatrix &t, std::size_t i, const Givens &g) {
  for (std::size_t k = 0; k < t.dim(); ++k) {
    const cplx x = t(k, i);
    const cplx y = t(k, i + 1);
    t(k, i) = g.c * x + std::conj(g.s) * y;
    t(k, i + 1) = -g.s * x + g.c * y;
  }
}

// In-place Householder reduction; returns the accumulated unitary Q.
ComplexMatrix reduce_to_hessenberg(ComplexMatrix &h) {
  const std::size_t n = h.dim();
  ComplexMatrix q = ComplexMatrix::identity(n);
  std::vector<cplx> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      xnorm2 += std::norm(h(i, k));
    }
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) {
      continue;
    }
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;

    std::fill(v.begin(), v.end(), cplx{});
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
    }
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) {
      continue;
    }
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] *= inv;
    }

    // H <- P H P with P = I - 2 v v^dagger.
    for (std::size_t c = 0; c < n; ++c) {
      cplx dot{};
      for (std::size_t i = k + 1; i < n; ++i) {
        dot += std::conj(v[i]) * h(i, c);
      }
      dot *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) {
        h(i, c) -= v[i] * dot;
      }
    }
    for (auto *target : {&h, &q}) {
      for (std::size_t r = 0; r < n; ++r) {
        cplx dot{};
        for (std::size_t i = k + 1; i < n; ++i) {
          dot += (*target)(r, i) * v[i];
        }
        dot *= 2.0;
        for (std::size_t i = k + 1; i < n; ++i) {
          (*target)(r, i) -= dot * std::conj(v[i]);
        }
      }
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) {
      h(i, k) = 0.0;
    }
  }
  return q;
}

bool negligible_subdiag(const ComplexMatrix &t, std::size_t i, double floor) {
  const double sub = std::abs(t(i + 1, i));
  const double diag = std::abs(t(i, i)) + std::abs(t(i + 1, i + 1));
  return sub <= kEps * diag || sub <= floor;
}

cplx wilkinson_shift(const ComplexMatrix &t, std::size_t iu, int iter) {
  if (iter % 10 == 0 && iter > 0) {
    // Exceptional shift to break cycles.
    double s = std::abs(t(iu, iu - 1).real());
    if (iu >= 2) {
      s += std::abs(t(iu - 1, iu - 2).real());
    }
    return t(iu, iu) + cplx{s, 0.0};
  }
  const cplx a = t(iu - 1, iu - 1);
  const cplx b = t(iu - 1, iu);
  const cplx c = t(iu, iu - 1);
  const cplx d = t(iu, iu);
  const cplx half_tr = 0.5 * (a + d);
  const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cplx mu1 = half_tr + disc;
  const cplx mu2 = half_tr - disc;
  return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

// Reduces Hessenberg `t` to upper triangular in place, accumulating into `z`.
void schur_qr(ComplexMatrix &t, ComplexMatrix &z) {
  const std::size_t n = t.dim();
  if (n == 1) {
    return;
  }
  const double floor = kEps * kEps * std::max(t.norm(), std::numeric_limits<double>::min());
  std::size_t iu = n - 1;
  int iter = 0;
  long total = 0;
  const long max_total = static_cast<long>(kMaxIterPerEigenvalue) * static_cast<long>(n);

  while (true) {
    while (iu > 0 && negligible_subdiag(t, iu - 1, floor)) {
      t(iu, iu - 1) = 0.0;
      iter = 0;
      --iu;
    }
    if (iu == 0) {
      break;
    }
    ++iter;
    ++total;
    if (total > max_total) {
      throw ConvergenceError("complex QR iteration did not converge",
                             std::abs(t(iu, iu - 1)));
    }
    std::size_t il = iu - 1;
    while (il > 0 && !negligible_subdiag(t, il - 1, floor)) {
      --il;
    }
    if (il > 0) {
      t(il, il - 1) = 0.0;
    }

    const cplx shift = wilkinson_shift(t, iu, iter);
    Givens g = make_givens(t(il, il) - shift, t(il + 1, il));
    apply_left(t, il, g);
    apply_right(t, il, g);
    apply_right(z, il, g);

    for (std::size_t i = il + 1; i < iu; ++i) {
      g = make_givens(t(i, i - 1), t(i + 1, i - 1));
      apply_left(t, i, g);
      apply_right(t, i, g);
      apply_right(z, i, g);
      t(i + 1, i - 1) = 0.0;
    }
  }
}

// Eigenvector of upper triangular T for diagonal entry k, in T's basis.
std::vector<cplx> triangular_eigenvector(const ComplexMatrix &t, std::size_t k, double small) {
  std::vector<cplx> y(t.dim());
  y[k] = 1.0;
  const cplx lambda = t(k, k);
  for (std::size_t ii = k; ii-- > 0;) {
    cplx s{};
    for (std::size_t j = ii + 1; j <= k; ++j) {
      s += t(ii, j) * y[j];
    }
    cplx d = t(ii, ii) - lambda;
    if (std::abs(d) < small) {
      d = small;
    }
    y[ii] = -s / d;
    const double mag = std::abs(y[ii]);
    if (mag > 1e100) {
      for (std::size_t j = ii; j <= k; ++j) {
        y[j] /= mag;
      }
    }
  }
  return y;
}

ComplexVector unit(ComplexVector v) {
  const double nv = norm(v);
  if (nv == 0.0 || !std::isfinite(nv)) {
    return v;
  }
  v *= 1.0 / nv;
  return v;
}

// LU with partial pivoting of (M - shift I); solves in place.
std::optional<ComplexVector> shifted_solve(const ComplexMatrix &m, cplx shift,
                                           const ComplexVector &rhs) {
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) -= shift;
  }
  std::vector<cplx> b(rhs.amplitudes().begin(), rhs.amplitudes().end());
  const double tiny = kEps * std::max(m.norm(), 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) {
        piv = r;
      }
    }
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(col, c), a(piv, c));
      }
      std::swap(b[col], b[piv]);
    }
    if (std::abs(a(col, col)) < tiny) {
      a(col, col) = tiny;
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a(r, col) / a(col, col);
      if (f == cplx{}) {
        continue;
      }
      for (std::size_t c = col; c < n; ++c) {
        a(r, c) -= f * a(col, c);
      }
      b[r] -= f * b[col];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    cplx s = b[ii];
    for (std::size_t c = ii + 1; c < n; ++c) {
      s -= a(ii, c) * b[c];
    }
    b[ii] = s / a(ii, ii);
  }
  for (const auto &z : b) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      return std::nullopt;
    }
  }
  return ComplexVector(std::move(b));
}

// Inverse iteration from `start`; the eigenvalue is re-estimated from the
// Rayleigh quotient after each step.
EigenPair refine(const ComplexMatrix &m, EigenPair pair) {
  const double perturb = 1e3 * kEps * std::max(m.norm(), 1.0);
  for (int step = 0; step < kRefineSteps; ++step) {
    auto next = shifted_solve(m, pair.value + perturb, pair.vector);
    if (!next) {
      break;
    }
    ComplexVector v = unit(std::move(*next));
    const cplx rq = inner(v, m * v);
    EigenPair candidate{rq, std::move(v)};
    if (eigen_residual(m, candidate) < eigen_residual(m, pair)) {
      pair = std::move(candidate);
    }
  }
  return pair;
}

// Component of v orthogonal to the orthonormal set `basis`.
double orthogonal_remainder(const std::vector<ComplexVector> &basis, ComplexVector &v) {
  for (const auto &b : basis) {
    v -= inner(b, v) * b;
  }
  return norm(v);
}

} // namespace

std::vector<EigenPair> general_eigenpairs(const ComplexMatrix &m) {
  const std::size_t n = m.dim();
  const double mnorm = m.norm();
  const double residual_limit = kResidualRelTol * (1.0 + mnorm);

  ComplexMatrix t = m;
  ComplexMatrix u = reduce_to_hessenberg(t);
  schur_qr(t, u);

  const double small = kEps * std::max(t.norm(), std::numeric_limits<double>::min());

  std::vector<EigenPair> found;
  found.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<cplx> y = triangular_eigenvector(t, k, small);
    ComplexVector v(n);
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc{};
      for (std::size_t j = 0; j <= k; ++j) {
        acc += u(r, j) * y[j];
      }
      v[r] = acc;
    }
    EigenPair pair{t(k, k), unit(std::move(v))};
    if (eigen_residual(m, pair) > residual_limit) {
      pair = refine(m, std::move(pair));
    }
    if (eigen_residual(m, pair) <= residual_limit) {
      pair.vector = canonical_phase(std::move(pair.vector));
      found.push_back(std::move(pair));
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const EigenPair &a, const EigenPair &b) {
    if (a.value.real() != b.value.real()) {
      return a.value.real() < b.value.real();
    }
    return a.value.imag() < b.value.imag();
  });

  // Keep only independent vectors inside each cluster of equal eigenvalues.
  // Rounding splits a Jordan block of size k into eigenvalues ~eps^(1/k)
  // apart whose vectors differ by about as much; 1e-4 covers k = 3.
  const double cluster_tol = 1e-4 * (1.0 + mnorm);
  constexpr double kIndependenceTol = 1e-4;
  std::vector<EigenPair> kept;
  kept.reserve(found.size());
  for (auto &pair : found) {
    std::vector<ComplexVector> cluster_basis;
    for (const auto &k : kept) {
      if (std::abs(k.value - pair.value) <= cluster_tol) {
        ComplexVector b = k.vector;
        if (orthogonal_remainder(cluster_basis, b) > 0.0) {
          cluster_basis.push_back(unit(std::move(b)));
        }
      }
    }
    ComplexVector probe = pair.vector;
    if (cluster_basis.empty() || orthogonal_remainder(cluster_basis, probe) > kIndependenceTol) {
      kept.push_back(std::move(pair));
    }
  }
  return kept;
}

} // namespace musynth
