#include "cli.hpp"

#include <CLI11.hpp>

#include "musynth/errors.hpp"
#include "musynth/mus.hpp"
#include "musynth/serialize.hpp"
#include "musynth/variational.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace musynth::cli {

namespace {

struct Options {
  std::string observable_a;
  std::string observable_b;
  std::string state;
  std::string out;
  std::string csv;
  std::string lambda_grid;
  double tol = 1e-8;
  double lambda = 0.0;

  std::size_t n = 0;
  double xmin = 0.0;
  double xmax = 0.0;
  double x0 = 0.0;
  double k = 0.0;
  double sigma = 0.0;
  std::string boundary = "dirichlet";
  bool report = false;

  std::size_t starts = 20;
  std::uint64_t seed = 42;
  double step = 0.05;
  int max_iters = 10000;
};

void emit(const std::string &text, const std::string &path, std::ostream &out) {
  if (path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw FormatError(path + ": cannot open file for writing");
  }
  file << text << '\n';
}

void require_same_dims(const Observable &a, const Observable &b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: observable-a has dim " + std::to_string(a.dim()) +
                         ", observable-b has dim " + std::to_string(b.dim()));
  }
}

int run_analyze(const Options &o, std::ostream &out) {
  const Observable a = load_observable(o.observable_a);
  const Observable b = load_observable(o.observable_b);
  require_same_dims(a, b);
  const StateVector psi = load_state(o.state);
  if (psi.dim() != a.dim()) {
    throw DimensionError("dimension mismatch: state has dim " + std::to_string(psi.dim()) +
                         ", observables have dim " + std::to_string(a.dim()));
  }
  emit(verdict_to_json(check_mus(psi, a, b, o.tol)), o.out, out);
  return kExitOk;
}

int run_find(const Options &o, std::ostream &out) {
  const Observable a = load_observable(o.observable_a);
  const Observable b = load_observable(o.observable_b);
  require_same_dims(a, b);
  auto cands = find_mus_at_lambda(a, b, o.lambda, o.tol);
  for (auto &c : cands) {
    c.state = StateVector(canonical_phase(c.state.vector()));
  }
  emit(candidates_to_json(o.lambda, cands), o.out, out);
  return kExitOk;
}

int run_sweep(const Options &o, std::ostream &out, std::ostream &err) {
  const std::vector<double> grid = parse_lambda_grid(o.lambda_grid);
  const Observable a = load_observable(o.observable_a);
  const Observable b = load_observable(o.observable_b);
  require_same_dims(a, b);
  const MusFamily family = sweep_lambda(a, b, grid, o.tol);
  bool any_failed = false;
  for (const auto &g : family.groups) {
    if (g.error) {
      any_failed = true;
      err << "lambda " << format_double(g.lambda) << ": " << *g.error << '\n';
    }
  }
  std::string csv = family_to_csv(family);
  if (!csv.empty() && csv.back() == '\n') {
    csv.pop_back();
  }
  emit(csv, o.csv, out);
  return any_failed ? kExitNonConvergence : kExitOk;
}

int run_gaussian(const Options &o, std::ostream &out) {
  const Grid1D grid(o.n, o.xmin, o.xmax);
  const Boundary boundary = parse_boundary(o.boundary);
  const StateVector psi = gaussian_packet(grid, o.x0, o.k, o.sigma);
  if (!o.out.empty() || !o.report) {
    emit(state_to_json(psi), o.out, out);
  }
  if (o.report) {
    const GaussianCheck check = verify_gaussian(grid, o.x0, o.k, o.sigma, boundary, 1e-3);
    out << gaussian_check_to_json(check) << '\n';
  }
  return kExitOk;
}

int run_minimize(const Options &o, std::ostream &out) {
  const Observable a = load_observable(o.observable_a);
  const Observable b = load_observable(o.observable_b);
  require_same_dims(a, b);
  MinimizeOptions opts;
  opts.seed = o.seed;
  opts.step = o.step;
  opts.max_iters = o.max_iters;
  emit(minimize_results_to_json(minimize_multistart(a, b, o.starts, opts)), o.out, out);
  return kExitOk;
}

void add_pair_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--observable-a", o.observable_a, "Observable A (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--observable-b", o.observable_b, "Observable B (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
}

} // namespace

std::vector<double> parse_lambda_grid(const std::string &text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw FormatError("lambda grid must look like start:stop:count, got '" + text + "'");
  }
  auto number = [&](std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw FormatError("lambda grid: bad number '" + std::string(text) + "'");
    }
    return v;
  };
  const std::string_view view(text);
  const double start = number(view.substr(0, first));
  const double stop = number(view.substr(first + 1, second - first - 1));
  const double count_d = number(view.substr(second + 1));
  if (count_d < 1.0 || count_d != std::floor(count_d)) {
    throw DegenerateInputError("lambda grid count must be an integer >= 1");
  }
  const auto count = static_cast<std::size_t>(count_d);
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(count == 1 ? start
                              : start + (stop - start) * static_cast<double>(i) /
                                            static_cast<double>(count - 1));
  }
  const double zero_tol = 1e-12 * (1.0 + std::max(std::abs(start), std::abs(stop)));
  for (double l : grid) {
    if (std::abs(l) <= zero_tol) {
      throw DegenerateInputError("lambda must be nonzero");
    }
  }
  return grid;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Minimum uncertainty state analysis and synthesis", "musynth"};
  app.require_subcommand(1, 1);

  auto *analyze = app.add_subcommand("analyze", "Decide whether a state is a MUS for (A, B)");
  add_pair_flags(analyze, o);
  analyze->add_option("--state", o.state, "State (JSON)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--tol", o.tol, "Decision tolerance");
  analyze->add_option("--out", o.out, "Write verdict JSON here instead of stdout");

  auto *find = app.add_subcommand("find", "MUS from eigenvectors of A - i lambda B");
  add_pair_flags(find, o);
  find->add_option("--lambda", o.lambda, "Real parameter lambda")->required();
  find->add_option("--tol", o.tol, "Decision tolerance");
  find->add_option("--out", o.out, "Write candidates JSON here instead of stdout");

  auto *sweep = app.add_subcommand("sweep", "find over a lambda grid, as CSV");
  add_pair_flags(sweep, o);
  sweep->add_option("--lambda-grid", o.lambda_grid, "start:stop:count")->required();
  sweep->add_option("--csv", o.csv, "Output CSV path")->required();
  sweep->add_option("--tol", o.tol, "Decision tolerance");

  auto *gaussian = app.add_subcommand("gaussian", "Gaussian wave packet on a grid");
  gaussian->add_option("--n", o.n, "Grid points")->required();
  gaussian->add_option("--xmin", o.xmin, "Left grid end")->required();
  gaussian->add_option("--xmax", o.xmax, "Right grid end")->required();
  gaussian->add_option("--x0", o.x0, "Packet centre")->required();
  gaussian->add_option("--k", o.k, "Wave number")->required();
  gaussian->add_option("--sigma", o.sigma, "Packet width")->required();
  gaussian->add_option("--boundary", o.boundary, "dirichlet|periodic")
      ->required()
      ->check(CLI::IsMember({"dirichlet", "periodic"}));
  gaussian->add_flag("--report", o.report, "Print the MUS verdict JSON to stdout");
  gaussian->add_option("--out", o.out, "Write state JSON here");

  auto *minimize = app.add_subcommand("minimize", "Variational search for MUS");
  add_pair_flags(minimize, o);
  minimize->add_option("--starts", o.starts, "Random starts");
  minimize->add_option("--seed", o.seed, "Seed for random starts");
  minimize->add_option("--step", o.step, "Gradient step");
  minimize->add_option("--max-iters", o.max_iters, "Iteration cap per start");
  minimize->add_option("--out", o.out, "Write results JSON here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help() << '\n';
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All) << '\n';
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(o, out);
    }
    if (find->parsed()) {
      return run_find(o, out);
    }
    if (sweep->parsed()) {
      return run_sweep(o, out, err);
    }
    if (gaussian->parsed()) {
      return run_gaussian(o, out);
    }
    if (minimize->parsed()) {
      return run_minimize(o, out);
    }
  } catch (const ConvergenceError &e) {
    err << "error: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kExitNonConvergence;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  err << "error: no command given\n";
  return kExitValidation;
}

} // namespace musynth::cli
