#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "latrel/simulator.hpp"

namespace {

using namespace latrel;

void BM_Trajectory(benchmark::State& state) {
  const auto model = bench::case_study_model();
  const double weeks = static_cast<double>(state.range(0));
  for (auto _ : state) {
    Rng rng(7);
    benchmark::DoNotOptimize(simulate_trajectory(model, weeks, rng));
  }
  state.SetLabel("weeks simulated");
}
BENCHMARK(BM_Trajectory)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SimulateEpochs(benchmark::State& state) {
  const auto model = bench::case_study_model();
  const auto profiles = bench::case_study_profiles();
  SimConfig cfg;
  cfg.sample_interval_minutes = kMinutesPerWeek;
  cfg.duration_weeks = static_cast<double>(state.range(0));
  cfg.strategy = Strategy::weighted(0.61);
  cfg.payload_bytes = 1500.0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(model, profiles, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateEpochs)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
