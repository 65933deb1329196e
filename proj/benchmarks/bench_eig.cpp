#include <benchmark/benchmark.h>

#include "common.hpp"
#include "purcell/eigensolver.hpp"
#include "purcell/heff.hpp"

using namespace purcell;

static void BM_BuildHeff(benchmark::State& state) {
  const ValidatedSystem system{bench::chain(static_cast<int>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(build_h_eff(system).matrix.sum());
}
BENCHMARK(BM_BuildHeff)->Arg(4)->Arg(16)->Arg(64);

static void BM_ComplexEig(benchmark::State& state) {
  const ValidatedSystem system{bench::chain(static_cast<int>(state.range(0)))};
  const MatrixXcd h = build_h_eff(system).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(eig(h).values.sum());
}
BENCHMARK(BM_ComplexEig)->Arg(4)->Arg(16)->Arg(64);

static void BM_PurcellRateExact(benchmark::State& state) {
  const ValidatedSystem system{bench::chain(static_cast<int>(state.range(0)))};
  for (auto _ : state) benchmark::DoNotOptimize(purcell_rate_exact(system).gamma_e);
}
BENCHMARK(BM_PurcellRateExact)->Arg(2)->Arg(8)->Arg(32);
