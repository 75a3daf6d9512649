#include <benchmark/benchmark.h>

#include "catalysis/channels.hpp"
#include "catalysis/homodyne.hpp"
#include "catalysis/phase_space.hpp"
#include "catalysis/tomography.hpp"

using namespace catalysis;

namespace {

DensityMatrix heralded_state() { return catalysis_pipeline(ExperimentParams{}, 10).rho_at_detector; }

void BM_Pipeline(benchmark::State& state) {
  ExperimentParams p;
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(catalysis_pipeline(p, dim));
}
BENCHMARK(BM_Pipeline)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
  const auto rho = heralded_state();
  for (auto _ : state) benchmark::DoNotOptimize(wigner_from_density(rho));
}
BENCHMARK(BM_WignerGrid)->Unit(benchmark::kMillisecond);

void BM_Sampling(benchmark::State& state) {
  const auto rho = heralded_state();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_quadratures(rho, n, LinearRamp{}, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sampling)->Arg(14153)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Fbp(benchmark::State& state) {
  const auto rec = sample_quadratures(heralded_state(), static_cast<std::size_t>(state.range(0)), LinearRamp{}, 2);
  ReconstructionSettings s;
  s.grid = {{-4.0, 4.0, 41}, {-4.0, 4.0, 41}};
  for (auto _ : state) benchmark::DoNotOptimize(fbp_wigner(rec, s));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 41 * 41);
}
BENCHMARK(BM_Fbp)->Arg(14153)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PatternTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(PatternFunctions(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PatternTable)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_PatternDensity(benchmark::State& state) {
  const auto rec = sample_quadratures(heralded_state(), static_cast<std::size_t>(state.range(0)), LinearRamp{}, 3);
  ReconstructionSettings s;
  const PatternFunctions pf(s.dim);
  for (auto _ : state) benchmark::DoNotOptimize(pattern_density(rec, s, pf));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PatternDensity)->Arg(14153)->Arg(200000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
