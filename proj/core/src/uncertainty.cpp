#include "musynth/uncertainty.hpp"

#include "musynth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace musynth {

namespace {

void require_dims(const StateVector &psi, const Observable &a) {
  if (psi.dim() != a.dim()) {
    std::ostringstream msg;
    msg << "dimension mismatch: state has dim " << psi.dim() << " but observable '" << a.name()
        << "' has dim " << a.dim();
    throw DimensionError(msg.str());
  }
}

double real_part_checked(cplx z, double imag_tol, const Observable &a) {
  if (std::abs(z.imag()) > imag_tol * std::max(1.0, std::abs(z.real()))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "expectation of '" << a.name() << "' has imaginary part " << z.imag();
    throw HermiticityError(msg.str());
  }
  return z.real();
}

} // namespace

double expectation(const StateVector &psi, const Observable &a, double imag_tol) {
  require_dims(psi, a);
  return real_part_checked(inner(psi.vector(), a.matrix() * psi.vector()), imag_tol, a);
}

ComplexVector deviation(const StateVector &psi, const Observable &a, double imag_tol) {
  require_dims(psi, a);
  ComplexVector a_psi = a.matrix() * psi.vector();
  const double mean = real_part_checked(inner(psi.vector(), a_psi), imag_tol, a);
  return a_psi - cplx{mean} * psi.vector();
}

double uncertainty_of(const StateVector &psi, const Observable &a, double imag_tol) {
  return norm(deviation(psi, a, imag_tol));
}

double commutator_expectation(const StateVector &psi, const Observable &a, const Observable &b) {
  require_dims(psi, a);
  require_dims(psi, b);
  // <psi, (AB - BA) psi> = <A psi, B psi> - <B psi, A psi> = 2i Im <A psi, B psi>
  return 2.0 * inner(a.matrix() * psi.vector(), b.matrix() * psi.vector()).imag();
}

UncertaintyReport robertson_report(const StateVector &psi, const Observable &a,
                                   const Observable &b, double imag_tol) {
  require_dims(psi, a);
  require_dims(psi, b);
  const ComplexVector &v = psi.vector();
  const ComplexVector a_psi = a.matrix() * v;
  const ComplexVector b_psi = b.matrix() * v;

  UncertaintyReport r;
  r.a = real_part_checked(inner(v, a_psi), imag_tol, a);
  r.b = real_part_checked(inner(v, b_psi), imag_tol, b);
  r.c = 2.0 * inner(a_psi, b_psi).imag();
  r.delta_a = norm(a_psi - cplx{r.a} * v);
  r.delta_b = norm(b_psi - cplx{r.b} * v);
  r.product = r.delta_a * r.delta_b;
  r.bound = 0.5 * std::abs(r.c);
  r.defect = r.product - r.bound;
  return r;
}

SchwarzWitness schwarz_gap(const ComplexVector &psi, const ComplexVector &phi) {
  if (psi.dim() != phi.dim()) {
    throw DimensionError("dimension mismatch in schwarz_gap");
  }
  const double phi_norm = norm(phi);
  if (phi_norm == 0.0) {
    throw DegenerateInputError("schwarz_gap needs a nonzero phi");
  }
  const double psi_norm = norm(psi);
  SchwarzWitness w;
  w.gap = psi_norm * phi_norm - std::abs(inner(psi, phi));
  const cplx z = inner(phi, psi) / (phi_norm * phi_norm);
  if (norm(psi - z * phi) <= 1e-9 * psi_norm) {
    w.proportional = true;
    w.z = z;
  }
  return w;
}

} // namespace musynth
