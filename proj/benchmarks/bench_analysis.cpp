#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "latrel/curve.hpp"
#include "latrel/gamma_optimizer.hpp"

namespace {

using namespace latrel;

void BM_SteadyState16(benchmark::State& state) {
  const auto model = bench::case_study_model();
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(model));
}
BENCHMARK(BM_SteadyState16);

void BM_CalibrateCellular(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(calibrate_cellular({0.98, 0.98, 0.9995, 50.4, 50.4, 50.4}));
}
BENCHMARK(BM_CalibrateCellular);

void BM_ReliabilityCurve(benchmark::State& state) {
  const auto model = bench::case_study_model();
  const auto ss = steady_state(model);
  const auto profiles = bench::case_study_profiles();
  const auto grid = make_grid(0.0, 800.0, 1.0);
  const auto kind = static_cast<StrategyKind>(state.range(0));
  const auto strategy = kind == StrategyKind::weighted ? Strategy::weighted(0.61)
                        : kind == StrategyKind::cloning ? Strategy::cloning()
                                                        : Strategy::two_of_three();
  for (auto _ : state)
    benchmark::DoNotOptimize(reliability_curve(strategy, model, ss, profiles, grid, 1500.0));
}
BENCHMARK(BM_ReliabilityCurve)->DenseRange(0, 2);

void BM_ExpectedMaxLatency(benchmark::State& state) {
  const auto p = bench::case_study_profiles();
  for (auto _ : state) benchmark::DoNotOptimize(expected_max_latency(p[1], p[2], 1500.0, 0.61));
}
BENCHMARK(BM_ExpectedMaxLatency);

void BM_OptimizeGamma(benchmark::State& state) {
  const auto p = bench::case_study_profiles();
  for (auto _ : state) benchmark::DoNotOptimize(optimize_gamma(p[1], p[2], 1500.0));
}
BENCHMARK(BM_OptimizeGamma)->Unit(benchmark::kMillisecond);

}  // namespace
