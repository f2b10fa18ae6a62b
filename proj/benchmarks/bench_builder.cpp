#include <benchmark/benchmark.h>

#include "phaseop/builder.hpp"

using namespace phaseop;

namespace {

BuildSpec spec_at(std::size_t d) { return BuildSpec{d, std::nullopt, Variant::full, Precision()}; }

const PolynomialSequence& ln_sequence() {
  static const PolynomialSequence s = ml_coefficients(auto_ml_params(20));
  return s;
}

void BM_FunctionOperator(benchmark::State& state) {
  const BuildSpec spec = spec_at(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_function_operator(ln_sequence(), spec));
}
BENCHMARK(BM_FunctionOperator)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_DirectDyad(benchmark::State& state) {
  const BuildSpec spec = spec_at(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_direct_dyad(ln_sequence(), spec));
}
BENCHMARK(BM_DirectDyad)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_PolynomialDirect(benchmark::State& state) {
  const BuildSpec spec = spec_at(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_polynomial_direct(ln_sequence(), spec));
}
BENCHMARK(BM_PolynomialDirect)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_PhaseOperator(benchmark::State& state) {
  const BuildSpec spec = spec_at(static_cast<std::size_t>(state.range(0)));
  const MLParams params = auto_ml_params(20);
  for (auto _ : state) benchmark::DoNotOptimize(build_phase_operator(params, spec));
}
BENCHMARK(BM_PhaseOperator)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_Quadrature(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(identity_resolution_quadrature(d, 1.0, 1.0, default_quadrature_nodes(d, 1.0)));
}
BENCHMARK(BM_Quadrature)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
