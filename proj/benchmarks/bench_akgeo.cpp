#include <benchmark/benchmark.h>

#include "akgeo/report.hpp"

namespace {

using namespace akgeo;

void BM_PipelineKodairaThurston(benchmark::State& state) {
  const auto spec = kodaira_thurston_coordinate(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(spec));
}
BENCHMARK(BM_PipelineKodairaThurston)->Unit(benchmark::kMillisecond);

void BM_PipelineNakamuraGeometry(benchmark::State& state) {
  const auto spec = nakamura({0.1, -0.2, 0.05, 0.2});
  PipelineOptions o;
  o.plurigenus = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(spec, o));
}
BENCHMARK(BM_PipelineNakamuraGeometry)->Unit(benchmark::kMillisecond);

void BM_AnalyticModes(benchmark::State& state) {
  const auto eq = mode_equation({0.1, -0.2, 0.05, 0.0}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(analytic_modes(eq, state.range(0)));
}
BENCHMARK(BM_AnalyticModes)->Arg(100)->Arg(1000);

void BM_BruteForceModes(benchmark::State& state) {
  const auto eq = mode_equation({0.1, -0.2, 0.05, 0.2}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_modes(eq, state.range(0)));
}
BENCHMARK(BM_BruteForceModes)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_ExteriorDerivative(benchmark::State& state) {
  const auto spec = nakamura({0.1, -0.2, 0.05, 0.2});
  const auto& alg = spec.algebra;
  InvariantForm f(alg.dim(), 2, alg.frame());
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j) f += Complex(i + 1.0, j) * InvariantForm::monomial(alg.dim(), {i, j}, alg.frame());
  for (auto _ : state) benchmark::DoNotOptimize(exterior_derivative(f, alg));
}
BENCHMARK(BM_ExteriorDerivative);

}  // namespace

BENCHMARK_MAIN();
