#include <benchmark/benchmark.h>

#include "common.hpp"
#include "purcell/analysis.hpp"
#include "purcell/perturbative.hpp"

using namespace purcell;

static void BM_GammaEff(benchmark::State& state) {
  const ValidatedSystem system{bench::chain(static_cast<int>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(gamma_eff(system).gamma_eff);
}
BENCHMARK(BM_GammaEff)->Arg(2)->Arg(8)->Arg(32);

static void BM_DensityMatrixRate(benchmark::State& state) {
  const ValidatedSystem system{bench::chain(static_cast<int>(state.range(0)))};
  for (auto _ : state)
    benchmark::DoNotOptimize(gamma_density_matrix(system, true).gamma_dm);
}
BENCHMARK(BM_DensityMatrixRate)->Arg(2)->Arg(8)->Arg(32);

static void BM_MonteCarloVariance(benchmark::State& state) {
  const DecayChannelStats a{80e-6, 1.6e-11};
  const DecayChannelStats b{120e-6, 0.9e-11};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        monte_carlo_variance(a, b, state.range(0), 7).var_t);
}
BENCHMARK(BM_MonteCarloVariance)->Arg(10000)->Arg(100000);
