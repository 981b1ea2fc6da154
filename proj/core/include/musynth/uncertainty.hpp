#pragma once

#include "musynth/observables.hpp"

#include <optional>

namespace musynth {

struct UncertaintyReport {
  double a = 0.0;       ///< <A>
  double b = 0.0;       ///< <B>
  double c = 0.0;       ///< <C>, [A, B] = iC
  double delta_a = 0.0; ///< |(A - a) psi|
  double delta_b = 0.0;
  double product = 0.0; ///< delta_a * delta_b
  double bound = 0.0;   ///< |c| / 2
  double defect = 0.0;  ///< product - bound, >= 0 up to round-off
};

struct SchwarzWitness {
  double gap = 0.0;
  bool proportional = false;
  std::optional<cplx> z; ///< psi = z * phi when proportional
};

/// Tolerance on |Im <psi, A psi>| before an expectation is rejected.
inline constexpr double kImaginaryTol = 1e-10;

double expectation(const StateVector &psi, const Observable &a, double imag_tol = kImaginaryTol);

/// |(A - <A>) psi|.
double uncertainty_of(const StateVector &psi, const Observable &a,
                      double imag_tol = kImaginaryTol);

/// (A - <A>) psi, the deviation vector the spread is the norm of.
ComplexVector deviation(const StateVector &psi, const Observable &a,
                        double imag_tol = kImaginaryTol);

/// <psi, C psi> for C = -i[A, B], evaluated as 2 Im <A psi, B psi> so the
/// commutator is never formed.
double commutator_expectation(const StateVector &psi, const Observable &a, const Observable &b);

UncertaintyReport robertson_report(const StateVector &psi, const Observable &a,
                                   const Observable &b, double imag_tol = kImaginaryTol);

SchwarzWitness schwarz_gap(const ComplexVector &psi, const ComplexVector &phi);

} // namespace musynth
