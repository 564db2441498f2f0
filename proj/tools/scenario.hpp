#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latrel/calibration.hpp"
#include "latrel/ctmc.hpp"
#include "latrel/error.hpp"
#include "latrel/strategy.hpp"

namespace latrel::cli {

/// Validation failure while reading a scenario document.  `line` is the
/// 1-based line of the offending key when it can be located.
class ScenarioError : public ValidationError {
 public:
  ScenarioError(const std::string& message, std::string field, std::optional<std::size_t> line)
      : ValidationError(message, std::move(field)), line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> line_;
};

struct InterfaceDecl {
  std::string id;
  std::optional<std::string> preset;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> availability;  // derived from the chain when absent
  double sigma_ratio = 0.1;
};

/// A component is given either by availability (failure rate is calibrated)
/// or by an explicit failure rate; restoration is always explicit.
struct ComponentDecl {
  std::string name;
  std::optional<double> availability;
  std::optional<double> failure_per_week;
  double restoration_per_week = 1.0;
};

struct GridSpec {
  double start_ms = 0.0;
  double stop_ms = 1000.0;
  double step_ms = 1.0;
};

struct SimulationSettings {
  std::uint64_t samples = 1'000'000;
  double sample_interval_minutes = 1.0;
  std::uint64_t seed = 1;
  unsigned replications = 1;
};

struct ScenarioConfig {
  std::array<InterfaceDecl, kInterfaceCount> interfaces;  // fiber, c1, c2
  std::array<ComponentDecl, 4> components;                // fiber, c1, c2, bs
  std::vector<StrategyKind> strategies;
  std::optional<double> gamma;  // nullopt: optimise
  double payload_bytes = 1500.0;
  GridSpec grid;
  SimulationSettings simulation;
};

/// Parses and validates a JSON scenario document.
ScenarioConfig parse_scenario(std::string_view text);

ScenarioConfig load_scenario_file(const std::string& path);

/// Everything needed to evaluate a scenario: component rates, the
/// three-interface chain and its steady state, and the resolved profiles.
struct ResolvedScenario {
  ComponentSpec fiber;
  ComponentSpec c1;
  ComponentSpec c2;
  ComponentSpec bs;
  std::optional<CalibratedRates> cellular_calibration;
  double fiber_residual = 0.0;
  CtmcModel model;
  SteadyState steady;
  ProfileTriple profiles;
  double gamma = 0.5;
  bool gamma_optimised = false;

  Strategy strategy(StrategyKind kind) const;
};

ResolvedScenario resolve(const ScenarioConfig& config);

}  // namespace latrel::cli
