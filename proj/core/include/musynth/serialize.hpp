#pragma once

// Text encodings of result types. JSON objects use the struct field names
// verbatim; complex numbers are [re, im]. The family CSV has the header
//
//   lambda,index,re_mu,im_mu,a,b,delta_a,delta_b,product,bound,defect,residual,is_mus
//
// with every float printed at 17 significant digits.

#include "musynth/mus.hpp"
#include "musynth/variational.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace musynth {

inline constexpr std::string_view kFamilyCsvHeader =
    "lambda,index,re_mu,im_mu,a,b,delta_a,delta_b,product,bound,defect,residual,is_mus";

std::string report_to_json(const UncertaintyReport &r, int indent = 2);
UncertaintyReport parse_report(std::string_view json_text);

std::string verdict_to_json(const MusVerdict &v, int indent = 2);
MusVerdict parse_verdict(std::string_view json_text);

/// {"lambda": x, "candidates": [{"state": {...}, "mu": [re, im], "lambda",
///  "a", "b", "via_hermitian", "verdict": {...}}, ...]}
std::string candidates_to_json(double lambda, const std::vector<MusCandidate> &cands,
                               int indent = 2);
std::vector<MusCandidate> parse_candidates(std::string_view json_text);

std::string gaussian_check_to_json(const GaussianCheck &g, int indent = 2);

std::string minimize_results_to_json(const std::vector<MinimizeResult> &results, int indent = 2);

/// One row of the family CSV.
struct FamilyRow {
  double lambda = 0.0;
  std::size_t index = 0;
  double re_mu = 0.0;
  double im_mu = 0.0;
  double a = 0.0;
  double b = 0.0;
  double delta_a = 0.0;
  double delta_b = 0.0;
  double product = 0.0;
  double bound = 0.0;
  double defect = 0.0;
  double residual = 0.0;
  bool is_mus = false;
};

void write_family_csv(std::ostream &out, const MusFamily &family);
std::string family_to_csv(const MusFamily &family);
std::vector<FamilyRow> parse_family_csv(std::string_view csv_text);

/// printf("%.17g") of x.
std::string format_double(double x);

} // namespace musynth
