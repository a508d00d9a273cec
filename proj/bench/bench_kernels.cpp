#include <benchmark/benchmark.h>

#include "noonsim/kernels.hpp"

using namespace noonsim;

namespace {

void fringe_args(benchmark::internal::Benchmark* b) {
  for (int atoms : {10, 20, 30}) b->Arg(atoms);
}

template <auto Kernel>
void BM_FringeSweep(benchmark::State& state) {
  const int atoms = static_cast<int>(state.range(0));
  RamseyConfig cfg;
  cfg.u_interference = -0.1;
  const RamseyChannel channel(atoms, cfg);
  const auto ensemble = MixedEnsemble::pure(make_noon(atoms, 0.0));
  const auto grid = uniform_theta_grid(512);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(channel, ensemble, grid, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

template <auto Kernel>
void BM_DyadParity(benchmark::State& state) {
  const int atoms = static_cast<int>(state.range(0));
  const RamseyChannel channel(atoms, RamseyConfig{});
  const auto grid = uniform_theta_grid(4 * static_cast<std::size_t>(atoms + 1));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(channel, grid));
}

template <auto Kernel>
void BM_RampSweep(benchmark::State& state) {
  RampSpec spec;
  const std::vector<double> times{0.25, 0.5, 1.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(spec, times, IntegratorConfig{}, GroundStateOptions{}));
}

}  // namespace

BENCHMARK(BM_FringeSweep<kernels::fringe_sweep_serial>)->Apply(fringe_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FringeSweep<kernels::fringe_sweep_omp>)->Apply(fringe_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DyadParity<kernels::dyad_parity_serial>)->Apply(fringe_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DyadParity<kernels::dyad_parity_omp>)->Apply(fringe_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RampSweep<kernels::ramp_sweep_serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RampSweep<kernels::ramp_sweep_omp>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
