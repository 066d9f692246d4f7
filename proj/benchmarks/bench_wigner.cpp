#include <benchmark/benchmark.h>

#include "ptw/coherent.hpp"
#include "ptw/grid.hpp"
#include "ptw/sensitivity.hpp"
#include "ptw/wigner.hpp"

namespace {

ptw::CoefficientState compass_state() {
  const ptw::PTParams params(50, 50, 2);
  return ptw::evolve(ptw::coherent_coefficients(params, 0.6), ptw::FractionalTime(1, 8));
}

void BM_WignerFast(benchmark::State& st) {
  const auto state = compass_state();
  const int n = static_cast<int>(st.range(0));
  const auto grid = ptw::PhaseSpaceGrid::for_state(state, n, n);
  for (auto _ : st) benchmark::DoNotOptimize(ptw::wigner_fast(state, grid));
}
BENCHMARK(BM_WignerFast)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_WignerDirect(benchmark::State& st) {
  const auto state = compass_state();
  const int n = static_cast<int>(st.range(0));
  const auto grid = ptw::PhaseSpaceGrid::for_state(state, n, n);
  for (auto _ : st) benchmark::DoNotOptimize(ptw::wigner_direct(state, grid));
}
BENCHMARK(BM_WignerDirect)->RangeMultiplier(2)->Range(64, 256)->Unit(benchmark::kMillisecond);

void BM_CoherentCoefficients(benchmark::State& st) {
  const ptw::PTParams params(50, 50, 2);
  const double beta = static_cast<double>(st.range(0)) / 100.0;
  for (auto _ : st) benchmark::DoNotOptimize(ptw::coherent_coefficients(params, beta));
}
BENCHMARK(BM_CoherentCoefficients)->Arg(30)->Arg(60)->Arg(90);

void BM_OverlapSweep(benchmark::State& st) {
  const ptw::PTParams params(50, 50, 2);
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        ptw::overlap_sweep(params, 0.4, 0.7853981633974483, 0.5, 101, params.revival_time() / 8));
  }
}
BENCHMARK(BM_OverlapSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
