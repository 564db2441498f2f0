#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latrel/curve.hpp"
#include "scenario.hpp"

namespace latrel::cli {

/// A named CSV document produced by a subcommand.  The driver writes it to
/// <output dir>/<name> or concatenates to stdout.
struct OutputFile {
  std::string name;
  std::string content;
};

std::vector<OutputFile> run_calibrate(const ScenarioConfig& config);

std::vector<OutputFile> run_analyze(const ScenarioConfig& config,
                                    std::optional<StrategyKind> only, bool nines);

std::vector<OutputFile> run_optimize_gamma(const ScenarioConfig& config);

struct SimulateOptions {
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> replications;
  std::optional<StrategyKind> strategy;
};

std::vector<OutputFile> run_simulate(const ScenarioConfig& config, const SimulateOptions& options);

/// Single-interface curves, independent two-interface parallel curves
/// (fiber with each cellular link) and the chain-mixed strategy curves.
std::vector<CurveResult> compare_curves(const ScenarioConfig& config,
                                        const ResolvedScenario& resolved);

std::vector<OutputFile> run_compare(const ScenarioConfig& config, bool nines);

}  // namespace latrel::cli
