#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latrel/latency_profile.hpp"

namespace latrel {

/// A latency-reliability curve sampled on a grid of deadlines.
struct CurveResult {
  std::string label;
  std::string strategy;
  std::vector<CurveSample> points;
  double payload_bytes = 0.0;
  std::optional<double> gamma;
  double bandwidth_multiplier = 1.0;
};

/// Inclusive grid start, start + step, ..., up to stop (within step/1e9).
std::vector<double> make_grid(double start_ms, double stop_ms, double step_ms);

/// Throws ValidationError unless the grid is non-empty, finite, >= 0 and
/// strictly increasing.
void check_grid(std::span<const double> grid_ms);

bool is_non_decreasing(const CurveResult& curve, double tolerance = 0.0);

/// Smallest deadline reaching `target`, linearly interpolated between the
/// bracketing grid points; nullopt if the curve never reaches it.
std::optional<double> latency_at_reliability(const CurveResult& curve, double target);

/// Reliability targets reported by the --nines summaries.
inline constexpr double kNinesTargets[] = {0.99, 0.999, 0.9999, 0.99999};

}  // namespace latrel
