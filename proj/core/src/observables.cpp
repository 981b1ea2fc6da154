#include "musynth/observables.hpp"

#include "json_util.hpp"
#include "musynth/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace musynth {

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(ComplexVector amplitudes, double tol) : vec_(std::move(amplitudes)) {
  const double nv = norm(vec_);
  if (!(std::abs(nv - 1.0) <= tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state is not normalized: norm " << nv << " differs from 1 by more than " << tol;
    throw NormalizationError(msg.str());
  }
}

StateVector StateVector::normalize(ComplexVector amplitudes) {
  const double nv = norm(amplitudes);
  if (nv == 0.0) {
    throw DegenerateInputError("cannot normalize the zero vector");
  }
  amplitudes *= 1.0 / nv;
  return StateVector(std::move(amplitudes), Trusted{});
}

StateVector StateVector::with_phase(double theta) const {
  return StateVector(std::polar(1.0, theta) * vec_, Trusted{});
}

// ---------------------------------------------------------------------------

Observable::Observable(std::string name, ComplexMatrix matrix, double rel_tol)
    : name_(std::move(name)), matrix_(std::move(matrix)) {
  require_hermitian(matrix_, rel_tol);
}

Grid1D::Grid1D(std::size_t n, double x_min, double x_max) : n_(n), x_min_(x_min), x_max_(x_max) {
  if (n < 3) {
    throw DegenerateInputError("grid needs at least 3 points");
  }
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw DegenerateInputError("grid needs finite endpoints with x_min < x_max");
  }
  h_ = (x_max - x_min) / static_cast<double>(n - 1);
}

Boundary parse_boundary(std::string_view text) {
  if (text == "dirichlet") {
    return Boundary::dirichlet;
  }
  if (text == "periodic") {
    return Boundary::periodic;
  }
  throw FormatError("unknown boundary '" + std::string(text) + "' (expected dirichlet|periodic)");
}

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "dirichlet";
}

Observable position_operator(const Grid1D &grid) {
  ComplexMatrix x(grid.n());
  for (std::size_t i = 0; i < grid.n(); ++i) {
    x(i, i) = grid.x(i);
  }
  return Observable("x", std::move(x));
}

ComplexMatrix difference_operator(const Grid1D &grid, Boundary boundary) {
  const std::size_t n = grid.n();
  const double w = 1.0 / (2.0 * grid.h());
  ComplexMatrix d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d(i, i + 1) = w;
    d(i + 1, i) = -w;
  }
  // Periodic wrap: node n-1 neighbours node 0, so the period is n * h.
  if (boundary == Boundary::periodic) {
    d(0, n - 1) = -w;
    d(n - 1, 0) = w;
  }
  return d;
}

Observable momentum_operator(const Grid1D &grid, Boundary boundary) {
  return Observable("p", -I_UNIT * difference_operator(grid, boundary));
}

SpinOperators spin_operators(int two_j) {
  if (two_j < 1) {
    throw DegenerateInputError("spin_operators needs two_j >= 1");
  }
  const auto dim = static_cast<std::size_t>(two_j + 1);
  const double j = 0.5 * two_j;

  ComplexMatrix jp(dim);
  ComplexMatrix jz(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double m = j - static_cast<double>(i);
    jz(i, i) = m;
    if (i > 0) {
      // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index i-1.
      jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  const ComplexMatrix jm = jp.adjoint();
  return SpinOperators{
      Observable("Jx", 0.5 * (jp + jm)),
      Observable("Jy", (-0.5 * I_UNIT) * (jp - jm)),
      Observable("Jz", std::move(jz)),
  };
}

// ---------------------------------------------------------------------------
// JSON

Observable parse_observable(std::string_view json_text, std::string_view source) {
  const nlohmann::json doc = detail::parse_json(json_text, source);
  const auto &name_field = detail::require_field(doc, "name", source);
  if (!name_field.is_string()) {
    throw FormatError(std::string(source) + ": field 'name' must be a string");
  }
  const std::string name = name_field.get<std::string>();
  const std::size_t dim = detail::read_dim(doc, source);
  const auto &rows = detail::require_field(doc, "matrix", source);
  if (!rows.is_array() || rows.size() != dim) {
    throw FormatError(std::string(source) + ": field 'matrix' must be an array of " +
                      std::to_string(dim) + " rows");
  }
  std::vector<cplx> entries;
  entries.reserve(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::string where = "matrix[" + std::to_string(r) + "]";
    const auto row = detail::read_complex_array(rows[r], source, where);
    if (row.size() != dim) {
      throw FormatError(std::string(source) + ": field '" + where + "' must hold " +
                        std::to_string(dim) + " entries");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  ComplexMatrix m(dim, std::move(entries));
  try {
    return Observable(name, std::move(m));
  } catch (const HermiticityError &e) {
    throw HermiticityError(std::string(source) + ": " + e.what());
  }
}

std::string observable_to_json(const Observable &obs) {
  nlohmann::json doc;
  doc["name"] = obs.name();
  doc["dim"] = obs.dim();
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < obs.dim(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < obs.dim(); ++c) {
      row.push_back(detail::complex_to_json(obs.matrix()(r, c)));
    }
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc.dump();
}

Observable load_observable(const std::filesystem::path &path) {
  return parse_observable(detail::read_file(path), path.string());
}

void save_observable(const Observable &obs, const std::filesystem::path &path) {
  detail::write_file(path, observable_to_json(obs) + "\n");
}

StateVector parse_state(std::string_view json_text, std::string_view source) {
  const nlohmann::json doc = detail::parse_json(json_text, source);
  const std::size_t dim = detail::read_dim(doc, source);
  auto amps =
      detail::read_complex_array(detail::require_field(doc, "amplitudes", source), source,
                                 "amplitudes");
  if (amps.size() != dim) {
    throw FormatError(std::string(source) + ": field 'amplitudes' holds " +
                      std::to_string(amps.size()) + " entries but dim is " + std::to_string(dim));
  }
  try {
    return StateVector(ComplexVector(std::move(amps)));
  } catch (const NormalizationError &e) {
    throw NormalizationError(std::string(source) + ": " + e.what());
  }
}

std::string state_to_json(const StateVector &psi) {
  return detail::state_json(psi).dump();
}

StateVector load_state(const std::filesystem::path &path) {
  return parse_state(detail::read_file(path), path.string());
}

void save_state(const StateVector &psi, const std::filesystem::path &path) {
  detail::write_file(path, state_to_json(psi) + "\n");
}

} // namespace musynth
