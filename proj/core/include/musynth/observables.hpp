#pragma once

#include "musynth/linalg.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace musynth {

/// Default normalization tolerance: | |psi| - 1 | <= 1e-9.
inline constexpr double kNormalizationTol = 1e-9;

/// A normalized state. Construction checks the norm; it never repairs it.
/// Use StateVector::normalize when the caller owns the rescaling.
class StateVector {
public:
  explicit StateVector(ComplexVector amplitudes, double tol = kNormalizationTol);

  /// Rescales to unit norm. Throws DegenerateInputError for the zero vector.
  static StateVector normalize(ComplexVector amplitudes);

  std::size_t dim() const noexcept { return vec_.dim(); }
  const ComplexVector &vector() const noexcept { return vec_; }
  const cplx &operator[](std::size_t i) const { return vec_[i]; }

  /// Same state multiplied by e^{i theta}.
  StateVector with_phase(double theta) const;

private:
  struct Trusted {};
  StateVector(ComplexVector amplitudes, Trusted) : vec_(std::move(amplitudes)) {}

  ComplexVector vec_;
};

/// A labelled Hermitian matrix.
class Observable {
public:
  Observable(std::string name, ComplexMatrix matrix, double rel_tol = kHermiticityTol);

  const std::string &name() const noexcept { return name_; }
  const ComplexMatrix &matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

private:
  std::string name_;
  ComplexMatrix matrix_;
};

/// Uniform grid with n points from x_min to x_max inclusive.
class Grid1D {
public:
  Grid1D(std::size_t n, double x_min, double x_max);

  std::size_t n() const noexcept { return n_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double h() const noexcept { return h_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * h_; }

private:
  std::size_t n_;
  double x_min_;
  double x_max_;
  double h_;
};

enum class Boundary { dirichlet, periodic };

Boundary parse_boundary(std::string_view text);
std::string_view to_string(Boundary b);

Observable position_operator(const Grid1D &grid);

/// -i times the central difference (psi_{i+1} - psi_{i-1}) / 2h.
Observable momentum_operator(const Grid1D &grid, Boundary boundary = Boundary::dirichlet);

/// The central-difference matrix itself (real antisymmetric), i.e. i * P.
ComplexMatrix difference_operator(const Grid1D &grid, Boundary boundary = Boundary::dirichlet);

struct SpinOperators {
  Observable jx;
  Observable jy;
  Observable jz;
};

/// Spin-j matrices, j = two_j / 2, in the basis |j>, |j-1>, ..., |-j>.
SpinOperators spin_operators(int two_j);

// File formats (JSON, complex entries as [re, im]):
//   observable: {"name": s, "dim": n, "matrix": [[[re,im] x n] x n]}
//   state:      {"dim": n, "amplitudes": [[re,im] x n]}

Observable load_observable(const std::filesystem::path &path);
void save_observable(const Observable &obs, const std::filesystem::path &path);
Observable parse_observable(std::string_view json_text, std::string_view source = "<string>");
std::string observable_to_json(const Observable &obs);

StateVector load_state(const std::filesystem::path &path);
void save_state(const StateVector &psi, const std::filesystem::path &path);
StateVector parse_state(std::string_view json_text, std::string_view source = "<string>");
std::string state_to_json(const StateVector &psi);

} // namespace musynth
