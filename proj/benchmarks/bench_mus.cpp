#include <benchmark/benchmark.h>

#include "musynth/mus.hpp"
#include "musynth/variational.hpp"

namespace {

void BM_FindSpin(benchmark::State &state) {
  const auto s = musynth::spin_operators(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(musynth::find_mus_at_lambda(s.jx, s.jy, -0.5));
  }
}
BENCHMARK(BM_FindSpin)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void BM_CheckMusGaussian(benchmark::State &state) {
  const musynth::Grid1D grid(static_cast<std::size_t>(state.range(0)), -6.0, 8.0);
  const auto x = musynth::position_operator(grid);
  const auto p = musynth::momentum_operator(grid, musynth::Boundary::dirichlet);
  const auto psi = musynth::gaussian_packet(grid, 1.0, 2.0, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(musynth::check_mus(psi, x, p, 1e-3));
  }
}
BENCHMARK(BM_CheckMusGaussian)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_MinimizeSpin1(benchmark::State &state) {
  const auto s = musynth::spin_operators(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(musynth::minimize_multistart(s.jx, s.jy, 4));
  }
}
BENCHMARK(BM_MinimizeSpin1)->Unit(benchmark::kMillisecond);

} // namespace
