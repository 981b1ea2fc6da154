#pragma once

#include <stdexcept>
#include <string>

namespace musynth {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A matrix that must be Hermitian is not, or an expectation value came out complex.
class HermiticityError : public Error {
public:
  using Error::Error;
};

/// A state vector that must be normalized is not.
class NormalizationError : public Error {
public:
  using Error::Error;
};

/// Input is well-formed but lies in an excluded degenerate case
/// (zero vector, zero spread of B, empty grid, ...).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

/// The sign of lambda is undefined because <C> vanishes while the spread of A does not.
class SignAmbiguousError : public Error {
public:
  using Error::Error;
};

/// A file or string did not parse as the expected format.
class FormatError : public Error {
public:
  using Error::Error;
};

/// The grid is too coarse or too short for the requested wave packet.
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// An iterative solver ran out of iterations.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string &what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

} // namespace musynth
