#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "latrel/ctmc.hpp"
#include "latrel/curve.hpp"
#include "latrel/rng.hpp"
#include "latrel/strategy.hpp"

namespace latrel {

struct SimConfig {
  double duration_weeks = 1.0;
  double sample_interval_minutes = 1.0;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::cloning();
  double payload_bytes = 0.0;
};

void validate(const SimConfig& config);

/// Number of sample epochs that fit in the configured duration.
std::size_t epoch_count(const SimConfig& config);

struct Sojourn {
  std::size_t state;
  double weeks;
};

/// Jump chain with exponential holding times, starting in state 0 and
/// truncated at the horizon.
std::vector<Sojourn> simulate_trajectory(const CtmcModel& model, double duration_weeks, Rng& rng);

inline constexpr double kFailureLatency = std::numeric_limits<double>::infinity();

struct SampleRecord {
  double time_minutes;
  std::size_t state;
  double latency_ms;  // kFailureLatency when the strategy cannot complete

  bool failed() const noexcept { return latency_ms == kFailureLatency; }
};

/// Completion latency of one transmission in a state with the given usable
/// interfaces, drawing one Gaussian latency per interface the strategy
/// needs.
double draw_completion_latency(const Strategy& strategy, InterfaceSet usable,
                               const ProfileTriple& profiles, double payload_bytes, Rng& rng);

/// Replays the trajectory and samples one transmission at every
/// `interval_minutes`, starting at time zero.
std::vector<SampleRecord> sample_latencies(std::span<const Sojourn> trajectory,
                                           const CtmcModel& model, const Strategy& strategy,
                                           const ProfileTriple& profiles, double payload_bytes,
                                           double interval_minutes, Rng& rng);

/// Fraction of records delivered within each grid deadline; failures stay
/// in the denominator.
CurveResult empirical_curve(std::span<const SampleRecord> records, std::span<const double> grid_ms);

struct SimulationResult {
  std::vector<SampleRecord> records;
  std::size_t failures = 0;
  std::vector<double> state_fractions;  // per model state, over all epochs

  double failure_fraction() const {
    return records.empty() ? 0.0 : static_cast<double>(failures) / static_cast<double>(records.size());
  }
};

/// Runs `replications` independent replications sharing the configured
/// epoch budget.  Replication r uses streams derived from (seed, 2r) for the
/// trajectory and (seed, 2r + 1) for latencies; results are concatenated in
/// replication order, so output does not depend on scheduling.
SimulationResult simulate(const CtmcModel& model, const ProfileTriple& profiles,
                          const SimConfig& config, unsigned replications = 1);

}  // namespace latrel
