#include <benchmark/benchmark.h>

#include "phaseop/ml_expansion.hpp"

using namespace phaseop;

namespace {

void BM_Coefficients(benchmark::State& state) {
  const MLParams params = auto_ml_params(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ml_coefficients(params));
}
BENCHMARK(BM_Coefficients)->Arg(10)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_SelectH(benchmark::State& state) {
  const auto p = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(select_h(p));
}
BENCHMARK(BM_SelectH)->Arg(20)->Arg(80);

void BM_ScalarSum(benchmark::State& state) {
  const PolynomialSequence s = ml_coefficients(auto_ml_params(static_cast<unsigned>(state.range(0))));
  const mp::Complex z(cplx(2.0, 0.5), s.precision.bits());
  for (auto _ : state) benchmark::DoNotOptimize(scalar_partial_sum(s, z));
}
BENCHMARK(BM_ScalarSum)->Arg(20)->Arg(80)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
