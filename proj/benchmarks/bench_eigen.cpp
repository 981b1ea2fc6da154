#include <benchmark/benchmark.h>

#include "musynth/linalg.hpp"

#include <random>

namespace {

musynth::ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed, bool hermitian) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  musynth::ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double re = dist(rng);
      m(r, c) = {re, dist(rng)};
    }
  }
  return hermitian ? 0.5 * (m + m.adjoint()) : m;
}

void BM_HermitianEigen(benchmark::State &state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(musynth::hermitian_eigenpairs(m));
  }
}
BENCHMARK(BM_HermitianEigen)->RangeMultiplier(2)->Range(4, 64);

void BM_GeneralEigen(benchmark::State &state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 2, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(musynth::general_eigenpairs(m));
  }
}
BENCHMARK(BM_GeneralEigen)->RangeMultiplier(2)->Range(4, 128);

} // namespace
