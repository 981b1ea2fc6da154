#include "musynth/linalg.hpp"

#include "musynth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace musynth {

namespace {

bool all_finite(std::span<const cplx> xs) {
  return std::all_of(xs.begin(), xs.end(), [](const cplx &z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

void require_same_dim(std::size_t lhs, std::size_t rhs, const char *op) {
  if (lhs != rhs) {
    std::ostringstream msg;
    msg << "dimension mismatch in " << op << ": " << lhs << " vs " << rhs;
    throw DimensionError(msg.str());
  }
}

} // namespace

// ---------------------------------------------------------------------------
// ComplexVector

ComplexVector::ComplexVector(std::size_t dim) : data_(dim) {
  if (dim == 0) {
    throw DimensionError("vector dimension must be at least 1");
  }
}

ComplexVector::ComplexVector(std::vector<cplx> amplitudes) : data_(std::move(amplitudes)) {
  if (data_.empty()) {
    throw DimensionError("vector dimension must be at least 1");
  }
  if (!all_finite(data_)) {
    throw FormatError("vector has non-finite entries");
  }
}

ComplexVector::ComplexVector(std::initializer_list<cplx> amplitudes)
    : ComplexVector(std::vector<cplx>(amplitudes)) {}

ComplexVector &ComplexVector::operator+=(const ComplexVector &rhs) {
  require_same_dim(dim(), rhs.dim(), "vector addition");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += rhs.data_[i];
  }
  return *this;
}

ComplexVector &ComplexVector::operator-=(const ComplexVector &rhs) {
  require_same_dim(dim(), rhs.dim(), "vector subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] -= rhs.data_[i];
  }
  return *this;
}

ComplexVector &ComplexVector::operator*=(cplx s) {
  for (auto &z : data_) {
    z *= s;
  }
  return *this;
}

ComplexVector operator+(ComplexVector lhs, const ComplexVector &rhs) { return lhs += rhs; }
ComplexVector operator-(ComplexVector lhs, const ComplexVector &rhs) { return lhs -= rhs; }
ComplexVector operator*(cplx s, ComplexVector v) { return v *= s; }
ComplexVector operator*(ComplexVector v, cplx s) { return v *= s; }

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) {
    throw DimensionError("matrix dimension must be at least 1");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim == 0) {
    throw DimensionError("matrix dimension must be at least 1");
  }
  if (data_.size() != dim * dim) {
    throw DimensionError("matrix storage does not hold dim*dim entries");
  }
  if (!all_finite(data_)) {
    throw FormatError("matrix has non-finite entries");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) {
    throw DimensionError("matrix dimension must be at least 1");
  }
  data_.reserve(dim_ * dim_);
  for (const auto &row : rows) {
    if (row.size() != dim_) {
      throw DimensionError("matrix must be square");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!all_finite(data_)) {
    throw FormatError("matrix has non-finite entries");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    m(i, i) = entries[i];
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

double ComplexMatrix::norm() const {
  double sum = 0.0;
  for (const auto &z : data_) {
    sum += std::norm(z);
  }
  return std::sqrt(sum);
}

double ComplexMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      row += std::abs((*this)(r, c));
    }
    best = std::max(best, row);
  }
  return best;
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
  require_same_dim(dim_, rhs.dim_, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += rhs.data_[i];
  }
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
  require_same_dim(dim_, rhs.dim_, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] -= rhs.data_[i];
  }
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
  for (auto &z : data_) {
    z *= s;
  }
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
  require_same_dim(lhs.dim(), rhs.dim(), "matrix product");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx a = lhs(r, k);
      if (a == cplx{}) {
        continue;
      }
      for (std::size_t c = 0; c < n; ++c) {
        out(r, c) += a * rhs(k, c);
      }
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix &m, const ComplexVector &v) {
  require_same_dim(m.dim(), v.dim(), "matrix-vector product");
  const std::size_t n = m.dim();
  ComplexVector out(n);
  for (std::size_t r = 0; r < n; ++r) {
    cplx acc{};
    for (std::size_t c = 0; c < n; ++c) {
      acc += m(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------

cplx inner(const ComplexVector &psi, const ComplexVector &phi) {
  require_same_dim(psi.dim(), phi.dim(), "inner product");
  cplx acc{};
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    acc += std::conj(psi[i]) * phi[i];
  }
  return acc;
}

double norm(const ComplexVector &phi) {
  double sum = 0.0;
  for (const auto &z : phi.amplitudes()) {
    sum += std::norm(z);
  }
  return std::sqrt(sum);
}

ComplexMatrix commutator_c(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_dim(a.dim(), b.dim(), "commutator");
  return -I_UNIT * (a * b - b * a);
}

namespace {

double max_abs_entry(const ComplexMatrix &m) {
  double best = 0.0;
  for (const auto &z : m.entries()) {
    best = std::max(best, std::abs(z));
  }
  return best;
}

} // namespace

bool is_hermitian(const ComplexMatrix &m, double rel_tol) {
  return m.hermiticity_defect() <= rel_tol * (1.0 + max_abs_entry(m));
}

void require_hermitian(const ComplexMatrix &m, double rel_tol) {
  const double limit = rel_tol * (1.0 + max_abs_entry(m));
  double worst = 0.0;
  std::size_t wr = 0, wc = 0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = r; c < m.dim(); ++c) {
      const double d = std::abs(m(r, c) - std::conj(m(c, r)));
      if (d > worst) {
        worst = d;
        wr = r;
        wc = c;
      }
    }
  }
  if (worst > limit) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "matrix is not Hermitian: worst entry (" << wr << ", " << wc << ") = " << m(wr, wc)
        << " vs conj of (" << wc << ", " << wr << ") = " << std::conj(m(wc, wr))
        << ", |difference| " << worst << " exceeds " << limit;
    throw HermiticityError(msg.str());
  }
}

double eigen_residual(const ComplexMatrix &m, const EigenPair &pair) {
  return norm(m * pair.vector - pair.value * pair.vector);
}

ComplexVector canonical_phase(ComplexVector v) {
  double largest = 0.0;
  for (const auto &z : v.amplitudes()) {
    largest = std::max(largest, std::abs(z));
  }
  if (largest == 0.0) {
    return v;
  }
  // Near-ties resolve to the lowest index so round-off cannot flip the pick.
  const double threshold = largest * (1.0 - 1e-12);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag >= threshold) {
      v *= std::conj(v[i]) / mag;
      v[i] = mag;
      break;
    }
  }
  return v;
}

} // namespace musynth
