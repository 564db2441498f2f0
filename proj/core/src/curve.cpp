#include "latrel/curve.hpp"

#include <cmath>

#include "latrel/error.hpp"

namespace latrel {

std::vector<double> make_grid(double start_ms, double stop_ms, double step_ms) {
  if (!std::isfinite(start_ms) || !std::isfinite(stop_ms) || start_ms < 0.0)
    throw ValidationError("grid bounds must be finite and start >= 0", "grid.start_ms");
  if (!(start_ms < stop_ms)) throw ValidationError("grid start must be < stop", "grid.stop_ms");
  if (!(step_ms > 0.0)) throw ValidationError("grid step must be > 0", "grid.step_ms");
  const auto count = static_cast<std::size_t>(std::floor((stop_ms - start_ms) / step_ms + 1e-9));
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i)
    grid.push_back(start_ms + static_cast<double>(i) * step_ms);
  return grid;
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("grid must not be empty", "grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0)
      throw ValidationError("grid point must be finite and >= 0", "grid", i);
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw ValidationError("grid must be strictly increasing", "grid", i);
  }
}

bool is_non_decreasing(const CurveResult& curve, double tolerance) {
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    if (curve.points[i].reliability < curve.points[i - 1].reliability - tolerance) return false;
  return true;
}

std::optional<double> latency_at_reliability(const CurveResult& curve, double target) {
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].reliability < target) continue;
    if (i == 0) return pts[0].x_ms;
    const auto& lo = pts[i - 1];
    const auto& hi = pts[i];
    const double w = (target - lo.reliability) / (hi.reliability - lo.reliability);
    return lo.x_ms + w * (hi.x_ms - lo.x_ms);
  }
  return std::nullopt;
}

}  // namespace latrel
