#include "commands.hpp"

#include <fmt/format.h>

#include "latrel/gamma_optimizer.hpp"
#include "latrel/simulator.hpp"
#include "latrel/strategy.hpp"
#include "report.hpp"

namespace latrel::cli {
namespace {

std::vector<double> grid_of(const ScenarioConfig& cfg) {
  return make_grid(cfg.grid.start_ms, cfg.grid.stop_ms, cfg.grid.step_ms);
}

std::string file_safe(std::string s) {
  for (auto& c : s)
    if (c == '+' || c == ' ' || c == '(' || c == ')' || c == '=' || c == '/') c = '_';
  return s;
}

}  // namespace

std::vector<OutputFile> run_calibrate(const ScenarioConfig& config) {
  const auto r = resolve(config);
  const double cell_residual = r.cellular_calibration ? r.cellular_calibration->residual : 0.0;
  const RateRow rows[] = {
      {r.fiber.name, r.fiber.failure_rate, r.fiber.restoration_rate, r.fiber_residual},
      {r.c1.name, r.c1.failure_rate, r.c1.restoration_rate, cell_residual},
      {r.c2.name, r.c2.failure_rate, r.c2.restoration_rate, cell_residual},
      {r.bs.name, r.bs.failure_rate, r.bs.restoration_rate, cell_residual},
  };
  return {{"rates.csv", rates_csv(rows)}, {"states.csv", states_csv(r.model, r.steady)}};
}

std::vector<OutputFile> run_analyze(const ScenarioConfig& config,
                                    std::optional<StrategyKind> only, bool nines) {
  const auto r = resolve(config);
  const auto grid = grid_of(config);
  std::vector<OutputFile> out;
  for (auto kind : config.strategies) {
    if (only && *only != kind) continue;
    const auto curve =
        reliability_curve(r.strategy(kind), r.model, r.steady, r.profiles, grid, config.payload_bytes);
    out.push_back({fmt::format("analyze_{}.csv", curve.strategy), curve_csv(curve, nines)});
  }
  if (only && out.empty()) {
    const auto curve =
        reliability_curve(r.strategy(*only), r.model, r.steady, r.profiles, grid, config.payload_bytes);
    out.push_back({fmt::format("analyze_{}.csv", curve.strategy), curve_csv(curve, nines)});
  }
  return out;
}

std::vector<OutputFile> run_optimize_gamma(const ScenarioConfig& config) {
  const auto r = resolve(config);
  const auto result = optimize_gamma(r.profiles[1], r.profiles[2], config.payload_bytes);
  return {{"gamma_scan.csv", gamma_csv(result)}};
}

std::vector<OutputFile> run_simulate(const ScenarioConfig& config, const SimulateOptions& options) {
  const auto r = resolve(config);
  const auto grid = grid_of(config);
  const auto samples = options.samples.value_or(config.simulation.samples);
  const auto seed = options.seed.value_or(config.simulation.seed);
  const auto replications = options.replications.value_or(config.simulation.replications);

  std::vector<StrategyKind> kinds =
      options.strategy ? std::vector<StrategyKind>{*options.strategy} : config.strategies;

  std::vector<OutputFile> out;
  std::string summary = "strategy,samples,failures,failure_fraction\n";
  for (auto kind : kinds) {
    SimConfig sim;
    sim.sample_interval_minutes = config.simulation.sample_interval_minutes;
    sim.duration_weeks = static_cast<double>(samples) * sim.sample_interval_minutes / kMinutesPerWeek;
    sim.seed = seed;
    sim.strategy = r.strategy(kind);
    sim.payload_bytes = config.payload_bytes;

    const auto result = simulate(r.model, r.profiles, sim, replications);
    auto curve = empirical_curve(result.records, grid);
    curve.strategy = std::string(sim.strategy.name());
    curve.label = "simulated_" + curve.strategy;
    curve.payload_bytes = config.payload_bytes;
    curve.gamma = sim.strategy.gamma();
    curve.bandwidth_multiplier = bandwidth_multiplier(sim.strategy);

    std::string csv = curve_csv(curve);
    const auto row = fmt::format("{},{},{},{:.9f}", curve.strategy, result.records.size(),
                                 result.failures, result.failure_fraction());
    csv += "# summary: strategy,samples,failures,failure_fraction\n# " + row + "\n";
    summary += row + "\n";
    out.push_back({fmt::format("simulate_{}.csv", curve.strategy), std::move(csv)});
  }
  out.push_back({"simulate_summary.csv", std::move(summary)});
  return out;
}

std::vector<CurveResult> compare_curves(const ScenarioConfig& config,
                                        const ResolvedScenario& r) {
  const auto grid = grid_of(config);
  const double b = config.payload_bytes;
  std::vector<CurveResult> curves;
  for (const auto& p : r.profiles) {
    auto c = single_interface_curve(p, grid, b);
    c.label = "single_" + p.id;
    curves.push_back(std::move(c));
  }
  const double kappas[] = {1.0, 1.0};
  for (std::size_t cell = 1; cell < kInterfaceCount; ++cell) {
    const InterfaceProfile pair[] = {r.profiles[0], r.profiles[cell]};
    auto c = independent_parallel_curve(pair, grid, b, kappas);
    c.label = "2par_ideal_" + r.profiles[0].id + "+" + r.profiles[cell].id;
    curves.push_back(std::move(c));
  }
  for (auto kind : config.strategies) {
    auto c = reliability_curve(r.strategy(kind), r.model, r.steady, r.profiles, grid, b);
    c.label = "3par_" + c.strategy;
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<OutputFile> run_compare(const ScenarioConfig& config, bool nines) {
  const auto r = resolve(config);
  const auto curves = compare_curves(config, r);
  std::vector<OutputFile> out;
  for (const auto& c : curves)
    out.push_back({"compare_" + file_safe(c.label) + ".csv", curve_csv(c, nines)});
  out.push_back({"compare_wide.csv", wide_csv(curves)});
  return out;
}

}  // namespace latrel::cli
