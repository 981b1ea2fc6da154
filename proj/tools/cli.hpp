#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace musynth::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNonConvergence = 3,
};

/// Parsed `start:stop:count` lambda grid: `count` evenly spaced points from
/// start to stop inclusive (count == 1 gives just start). Throws
/// DegenerateInputError for count < 1 or a grid that hits zero.
std::vector<double> parse_lambda_grid(const std::string &text);

/// Runs one invocation. `args` excludes the program name. Results go to the
/// --out/--csv file when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace musynth::cli
