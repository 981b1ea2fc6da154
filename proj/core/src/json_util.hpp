#pragma once

// Private JSON helpers shared by the serializers. Not installed.

#include "musynth/errors.hpp"
#include "musynth/observables.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace musynth::detail {

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError(path.string() + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError(path.string() + ": cannot open file for writing");
  }
  out << text;
  if (!out) {
    throw FormatError(path.string() + ": write failed");
  }
}

inline nlohmann::json parse_json(std::string_view text, std::string_view source) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(std::string(source) + ": invalid JSON: " + e.what());
  }
}

inline const nlohmann::json &require_field(const nlohmann::json &doc, const char *field,
                                           std::string_view source) {
  if (!doc.is_object() || !doc.contains(field)) {
    throw FormatError(std::string(source) + ": missing field '" + field + "'");
  }
  return doc.at(field);
}

inline double read_number(const nlohmann::json &doc, const char *field, std::string_view source) {
  const auto &v = require_field(doc, field, source);
  if (!v.is_number()) {
    throw FormatError(std::string(source) + ": field '" + field + "' must be a number");
  }
  return v.get<double>();
}

inline bool read_bool(const nlohmann::json &doc, const char *field, std::string_view source) {
  const auto &v = require_field(doc, field, source);
  if (!v.is_boolean()) {
    throw FormatError(std::string(source) + ": field '" + field + "' must be a boolean");
  }
  return v.get<bool>();
}

inline std::size_t read_dim(const nlohmann::json &doc, std::string_view source) {
  const auto &v = require_field(doc, "dim", source);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw FormatError(std::string(source) + ": field 'dim' must be a positive integer");
  }
  return v.get<std::size_t>();
}

inline cplx read_complex(const nlohmann::json &v, std::string_view source,
                         const std::string &where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw FormatError(std::string(source) + ": field '" + where +
                      "' must be a [re, im] pair of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

inline std::vector<cplx> read_complex_array(const nlohmann::json &v, std::string_view source,
                                            const std::string &where) {
  if (!v.is_array()) {
    throw FormatError(std::string(source) + ": field '" + where + "' must be an array");
  }
  std::vector<cplx> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(read_complex(v[i], source, where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json state_json(const StateVector &psi) {
  nlohmann::json doc;
  doc["dim"] = psi.dim();
  auto amps = nlohmann::json::array();
  for (const auto &z : psi.vector().amplitudes()) {
    amps.push_back(complex_to_json(z));
  }
  doc["amplitudes"] = std::move(amps);
  return doc;
}

} // namespace musynth::detail
