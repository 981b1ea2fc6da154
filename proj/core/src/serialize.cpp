#include "musynth/serialize.hpp"

#include "json_util.hpp"
#include "musynth/errors.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace musynth {

using nlohmann::json;

namespace {

constexpr std::string_view kSource = "<json>";

json report_json(const UncertaintyReport &r) {
  return json{{"a", r.a},           {"b", r.b},         {"c", r.c},
              {"delta_a", r.delta_a}, {"delta_b", r.delta_b}, {"product", r.product},
              {"bound", r.bound},   {"defect", r.defect}};
}

UncertaintyReport report_from(const json &doc) {
  UncertaintyReport r;
  r.a = detail::read_number(doc, "a", kSource);
  r.b = detail::read_number(doc, "b", kSource);
  r.c = detail::read_number(doc, "c", kSource);
  r.delta_a = detail::read_number(doc, "delta_a", kSource);
  r.delta_b = detail::read_number(doc, "delta_b", kSource);
  r.product = detail::read_number(doc, "product", kSource);
  r.bound = detail::read_number(doc, "bound", kSource);
  r.defect = detail::read_number(doc, "defect", kSource);
  return r;
}

json verdict_json(const MusVerdict &v) {
  json doc;
  doc["is_mus"] = v.is_mus;
  doc["lambda"] = v.lambda ? json(*v.lambda) : json(nullptr);
  doc["condition_residual"] = v.condition_residual;
  doc["gap1"] = v.gap1;
  doc["gap2"] = v.gap2;
  doc["reason"] = std::string(to_string(v.reason));
  doc["report"] = report_json(v.report);
  return doc;
}

MusVerdict verdict_from(const json &doc) {
  MusVerdict v;
  v.is_mus = detail::read_bool(doc, "is_mus", kSource);
  const auto &lambda = detail::require_field(doc, "lambda", kSource);
  if (!lambda.is_null()) {
    v.lambda = detail::read_number(doc, "lambda", kSource);
  }
  v.condition_residual = detail::read_number(doc, "condition_residual", kSource);
  v.gap1 = detail::read_number(doc, "gap1", kSource);
  v.gap2 = detail::read_number(doc, "gap2", kSource);
  const auto &reason = detail::require_field(doc, "reason", kSource);
  if (!reason.is_string()) {
    throw FormatError("field 'reason' must be a string");
  }
  v.reason = parse_mus_reason(reason.get<std::string>());
  v.report = report_from(detail::require_field(doc, "report", kSource));
  return v;
}

} // namespace

std::string report_to_json(const UncertaintyReport &r, int indent) {
  return report_json(r).dump(indent);
}

UncertaintyReport parse_report(std::string_view json_text) {
  return report_from(detail::parse_json(json_text, kSource));
}

std::string verdict_to_json(const MusVerdict &v, int indent) {
  return verdict_json(v).dump(indent);
}

MusVerdict parse_verdict(std::string_view json_text) {
  return verdict_from(detail::parse_json(json_text, kSource));
}

std::string candidates_to_json(double lambda, const std::vector<MusCandidate> &cands,
                               int indent) {
  json doc;
  doc["lambda"] = lambda;
  auto arr = json::array();
  for (const auto &c : cands) {
    arr.push_back(json{{"state", detail::state_json(c.state)},
                       {"mu", detail::complex_to_json(c.mu)},
                       {"lambda", c.lambda},
                       {"a", c.a},
                       {"b", c.b},
                       {"via_hermitian", c.via_hermitian},
                       {"verdict", verdict_json(c.verdict)}});
  }
  doc["candidates"] = std::move(arr);
  return doc.dump(indent);
}

std::vector<MusCandidate> parse_candidates(std::string_view json_text) {
  const json doc = detail::parse_json(json_text, kSource);
  const auto &arr = detail::require_field(doc, "candidates", kSource);
  if (!arr.is_array()) {
    throw FormatError("field 'candidates' must be an array");
  }
  std::vector<MusCandidate> out;
  out.reserve(arr.size());
  for (const auto &item : arr) {
    StateVector psi = parse_state(detail::require_field(item, "state", kSource).dump(), kSource);
    out.push_back(MusCandidate{
        std::move(psi),
        detail::read_complex(detail::require_field(item, "mu", kSource), kSource, "mu"),
        detail::read_number(item, "lambda", kSource),
        detail::read_number(item, "a", kSource),
        detail::read_number(item, "b", kSource),
        verdict_from(detail::require_field(item, "verdict", kSource)),
        detail::read_bool(item, "via_hermitian", kSource),
    });
  }
  return out;
}

std::string gaussian_check_to_json(const GaussianCheck &g, int indent) {
  json doc;
  doc["lambda"] = g.verdict.lambda ? json(*g.verdict.lambda) : json(nullptr);
  doc["expected_lambda"] = g.expected_lambda;
  doc["lambda_rel_error"] = g.lambda_rel_error;
  doc["expected_eigenvalue"] = detail::complex_to_json(g.expected_eigenvalue);
  doc["eigen_residual"] = g.eigen_residual;
  doc["verdict"] = verdict_json(g.verdict);
  return doc.dump(indent);
}

std::string minimize_results_to_json(const std::vector<MinimizeResult> &results, int indent) {
  auto arr = json::array();
  for (const auto &r : results) {
    arr.push_back(json{{"state", detail::state_json(r.state)},
                       {"objective", r.objective},
                       {"iterations", r.iterations},
                       {"converged", r.converged},
                       {"verdict", verdict_json(r.verdict)}});
  }
  return arr.dump(indent);
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

void write_family_csv(std::ostream &out, const MusFamily &family) {
  out << kFamilyCsvHeader << '\n';
  for (const auto &group : family.groups) {
    for (std::size_t i = 0; i < group.candidates.size(); ++i) {
      const MusCandidate &c = group.candidates[i];
      const UncertaintyReport &r = c.verdict.report;
      out << format_double(group.lambda) << ',' << i << ',' << format_double(c.mu.real()) << ','
          << format_double(c.mu.imag()) << ',' << format_double(c.a) << ','
          << format_double(c.b) << ',' << format_double(r.delta_a) << ','
          << format_double(r.delta_b) << ',' << format_double(r.product) << ','
          << format_double(r.bound) << ',' << format_double(r.defect) << ','
          << format_double(c.verdict.condition_residual) << ','
          << (c.verdict.is_mus ? "true" : "false") << '\n';
    }
  }
}

std::string family_to_csv(const MusFamily &family) {
  std::ostringstream out;
  write_family_csv(out, family);
  return out.str();
}

namespace {

double parse_csv_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw FormatError("csv line " + std::to_string(line) + ": bad number '" +
                      std::string(field) + "'");
  }
  return value;
}

} // namespace

std::vector<FamilyRow> parse_family_csv(std::string_view csv_text) {
  std::vector<FamilyRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < csv_text.size()) {
    std::size_t eol = csv_text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = csv_text.size();
    }
    std::string_view line = csv_text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (line.empty()) {
      continue;
    }
    if (!header_seen) {
      if (line != kFamilyCsvHeader) {
        throw FormatError("csv header mismatch: got '" + std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start));
      if (comma == std::string_view::npos) {
        break;
      }
      start = comma + 1;
    }
    if (fields.size() != 13) {
      throw FormatError("csv line " + std::to_string(line_no) + ": expected 13 fields, got " +
                        std::to_string(fields.size()));
    }
    FamilyRow r;
    r.lambda = parse_csv_double(fields[0], line_no);
    r.index = static_cast<std::size_t>(parse_csv_double(fields[1], line_no));
    r.re_mu = parse_csv_double(fields[2], line_no);
    r.im_mu = parse_csv_double(fields[3], line_no);
    r.a = parse_csv_double(fields[4], line_no);
    r.b = parse_csv_double(fields[5], line_no);
    r.delta_a = parse_csv_double(fields[6], line_no);
    r.delta_b = parse_csv_double(fields[7], line_no);
    r.product = parse_csv_double(fields[8], line_no);
    r.bound = parse_csv_double(fields[9], line_no);
    r.defect = parse_csv_double(fields[10], line_no);
    r.residual = parse_csv_double(fields[11], line_no);
    if (fields[12] == "true") {
      r.is_mus = true;
    } else if (fields[12] == "false") {
      r.is_mus = false;
    } else {
      throw FormatError("csv line " + std::to_string(line_no) + ": is_mus must be true|false");
    }
    rows.push_back(r);
  }
  if (!header_seen) {
    throw FormatError("csv is empty");
  }
  return rows;
}

} // namespace musynth
