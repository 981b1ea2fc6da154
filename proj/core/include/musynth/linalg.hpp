#pragma once

// Dense complex vectors and matrices, the inner product used throughout the
// library, and the two eigensolvers (Hermitian Jacobi, general Schur/QR).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace musynth {

using cplx = std::complex<double>;

inline constexpr cplx I_UNIT{0.0, 1.0};

/// Column vector of complex amplitudes. Always at least one entry, all finite.
class ComplexVector {
public:
  explicit ComplexVector(std::size_t dim);
  explicit ComplexVector(std::vector<cplx> amplitudes);
  ComplexVector(std::initializer_list<cplx> amplitudes);

  std::size_t dim() const noexcept { return data_.size(); }

  cplx &operator[](std::size_t i) { return data_[i]; }
  const cplx &operator[](std::size_t i) const { return data_[i]; }

  std::span<const cplx> amplitudes() const noexcept { return data_; }
  std::span<cplx> amplitudes() noexcept { return data_; }

  ComplexVector &operator+=(const ComplexVector &rhs);
  ComplexVector &operator-=(const ComplexVector &rhs);
  ComplexVector &operator*=(cplx s);

private:
  std::vector<cplx> data_;
};

ComplexVector operator+(ComplexVector lhs, const ComplexVector &rhs);
ComplexVector operator-(ComplexVector lhs, const ComplexVector &rhs);
ComplexVector operator*(cplx s, ComplexVector v);
ComplexVector operator*(ComplexVector v, cplx s);

/// Square dense matrix, row-major.
class ComplexMatrix {
public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cplx> entries);

  std::size_t dim() const noexcept { return dim_; }

  cplx &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;

  /// Frobenius norm.
  double norm() const;
  /// Largest absolute row sum; an upper bound on the spectral norm.
  double norm_inf() const;
  /// Largest |M(r,c) - conj(M(c,r))|.
  double hermiticity_defect() const;

  ComplexMatrix &operator+=(const ComplexMatrix &rhs);
  ComplexMatrix &operator-=(const ComplexMatrix &rhs);
  ComplexMatrix &operator*=(cplx s);

private:
  std::size_t dim_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexVector operator*(const ComplexMatrix &m, const ComplexVector &v);

/// Sum of conj(psi_i) * phi_i: antilinear in the first slot.
cplx inner(const ComplexVector &psi, const ComplexVector &phi);

double norm(const ComplexVector &phi);

/// C with [A, B] = iC, i.e. C = -i(AB - BA).
ComplexMatrix commutator_c(const ComplexMatrix &a, const ComplexMatrix &b);

/// Hermiticity tolerance used by every check in the library:
/// max |M - M^dagger| <= rel_tol * (1 + max |M|).
inline constexpr double kHermiticityTol = 1e-10;

bool is_hermitian(const ComplexMatrix &m, double rel_tol = kHermiticityTol);

/// Throws HermiticityError naming the worst offending entry.
void require_hermitian(const ComplexMatrix &m, double rel_tol = kHermiticityTol);

struct EigenPair {
  cplx value;
  ComplexVector vector;
};

/// Eigenpairs of a Hermitian matrix by cyclic Jacobi rotations.
/// Values ascending (imaginary parts exactly zero), vectors orthonormal.
std::vector<EigenPair> hermitian_eigenpairs(const ComplexMatrix &m);

/// Eigenpairs of an arbitrary square matrix via Hessenberg reduction and
/// shifted complex QR. Only true eigenvectors are returned: a defective
/// matrix yields fewer than dim pairs. Ordered by (Re, Im) of the value.
/// Each returned pair satisfies |M v - value v| <= 1e-8 (1 + |M|_F).
std::vector<EigenPair> general_eigenpairs(const ComplexMatrix &m);

/// |M v - value v|.
double eigen_residual(const ComplexMatrix &m, const EigenPair &pair);

/// Rotate v so its largest-magnitude entry is real and positive; ties go to
/// the lowest index.
ComplexVector canonical_phase(ComplexVector v);

} // namespace musynth
