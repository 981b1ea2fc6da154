#pragma once

// Projected gradient descent on the unit sphere for
//
//     F(psi) = (spread(A) spread(B))^2 - <C>^2 / 4,
//
// which vanishes exactly on minimum uncertainty states and is smooth at
// <C> = 0. Used as an independent check of the eigenvector construction.

#include "musynth/mus.hpp"

#include <cstdint>
#include <random>

namespace musynth {

struct MinimizeOptions {
  int max_iters = 10000;
  double step = 0.05;
  double grad_tol = 1e-12;
  double defect_tol = 1e-8;
  std::uint64_t seed = 42;
  double verdict_tol = 1e-4; ///< tolerance handed to check_mus on the final state
};

struct MinimizeResult {
  StateVector state;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false; ///< objective <= defect_tol
  MusVerdict verdict;
};

double defect_objective(const StateVector &psi, const Observable &a, const Observable &b);

/// Gradient of F over the 2n real coordinates, written as a complex vector
/// g (so dF = Re <g, dpsi>), with the radial component removed.
ComplexVector defect_gradient(const StateVector &psi, const Observable &a, const Observable &b);

MinimizeResult minimize_defect(const Observable &a, const Observable &b, const StateVector &psi0,
                               const MinimizeOptions &opts = {});

/// Haar-random state: i.i.d. complex normal amplitudes, normalized. Normal
/// samples come from Box-Muller over the raw 53-bit output of mt19937_64, so
/// the stream is identical on every standard library.
StateVector random_state(std::size_t dim, std::mt19937_64 &rng);

/// Start `index` of a multi-start run: random_state on an mt19937_64 seeded
/// by std::seed_seq{seed low word, seed high word, index}.
StateVector random_start(std::size_t dim, std::uint64_t seed, std::size_t index);

/// minimize_defect from `starts` random starts, results in start order.
std::vector<MinimizeResult> minimize_multistart(const Observable &a, const Observable &b,
                                                std::size_t starts,
                                                const MinimizeOptions &opts = {});

} // namespace musynth
