#include <benchmark/benchmark.h>

#include "common.hpp"
#include "purcell/analysis.hpp"

using namespace purcell;

static void BM_Sweep1D(benchmark::State& state) {
  const SystemSpec spec = bench::chain(5);
  const auto grid = linspace(two_pi * 2e9, two_pi * 5.5e9, 200);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto result = sweep_1d(spec, "qubit.omega_q", grid,
                                 {Method::Exact, Method::Eq11}, threads);
    benchmark::DoNotOptimize(result.records.back().gamma_exact);
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_Sweep1D)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
