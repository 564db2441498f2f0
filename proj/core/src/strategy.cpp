#include "latrel/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "latrel/error.hpp"
#include "latrel/reliability.hpp"

namespace latrel {
namespace {

constexpr auto kFiber = static_cast<std::size_t>(InterfaceId::fiber);
constexpr auto kC1 = static_cast<std::size_t>(InterfaceId::c1);
constexpr auto kC2 = static_cast<std::size_t>(InterfaceId::c2);

std::array<double, kInterfaceCount> normalized_values(const Strategy& strategy,
                                                      InterfaceSet usable,
                                                      const ProfileTriple& profiles,
                                                      double x_ms, double payload_bytes) {
  const auto kappa = kappa_for(strategy);
  std::array<double, kInterfaceCount> cdf{};
  for (std::size_t i = 0; i < kInterfaceCount; ++i) {
    if (usable.contains(static_cast<InterfaceId>(i)))
      cdf[i] = normalized_cdf(profiles[i], x_ms, kappa[i] * payload_bytes);
  }
  return cdf;
}

std::string describe(const Strategy& s) {
  std::string out(s.name());
  if (s.gamma()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "(gamma=%.6g)", *s.gamma());
    out += buf;
  }
  return out;
}

}  // namespace

Strategy Strategy::weighted(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw ValidationError("gamma must lie in [0, 1]", "gamma");
  return Strategy(StrategyKind::weighted, gamma);
}

std::string_view Strategy::name() const noexcept {
  switch (kind_) {
    case StrategyKind::cloning: return "cloning";
    case StrategyKind::two_of_three: return "two_of_three";
    case StrategyKind::weighted: return "weighted";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept {
  if (name == "cloning") return StrategyKind::cloning;
  if (name == "two_of_three" || name == "2-of-3" || name == "2of3")
    return StrategyKind::two_of_three;
  if (name == "weighted") return StrategyKind::weighted;
  return std::nullopt;
}

std::array<double, kInterfaceCount> kappa_for(const Strategy& strategy) {
  switch (strategy.kind()) {
    case StrategyKind::cloning: return {1.0, 1.0, 1.0};
    case StrategyKind::two_of_three: return {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    case StrategyKind::weighted: {
      const double g = *strategy.gamma();
      return {1.0, g, 1.0 - g};
    }
  }
  return {};
}

double bandwidth_multiplier(const Strategy& strategy) {
  const auto k = kappa_for(strategy);
  return k[0] + k[1] + k[2];
}

double combine_state_value(const Strategy& strategy, InterfaceSet usable,
                           const std::array<double, kInterfaceCount>& cdf) {
  const bool fiber = usable.contains(InterfaceId::fiber);
  const bool c1 = usable.contains(InterfaceId::c1);
  const bool c2 = usable.contains(InterfaceId::c2);

  switch (strategy.kind()) {
    case StrategyKind::cloning: {
      double miss = 1.0;
      for (std::size_t i = 0; i < kInterfaceCount; ++i)
        if (usable.contains(static_cast<InterfaceId>(i))) miss *= 1.0 - cdf[i];
      return usable.empty() ? 0.0 : 1.0 - miss;
    }
    case StrategyKind::two_of_three: {
      if (usable.size() == 3) return two_of_three_cdf(cdf[kFiber], cdf[kC1], cdf[kC2]);
      if (usable.size() == 2) {
        double both = 1.0;
        for (std::size_t i = 0; i < kInterfaceCount; ++i)
          if (usable.contains(static_cast<InterfaceId>(i))) both *= cdf[i];
        return both;
      }
      return 0.0;
    }
    case StrategyKind::weighted: {
      const bool pair = c1 && c2;
      if (fiber && pair)
        return first_arrival_cdf({cdf[kFiber], last_arrival_cdf({cdf[kC1], cdf[kC2]})});
      if (fiber) return cdf[kFiber];
      if (pair) return last_arrival_cdf({cdf[kC1], cdf[kC2]});
      return 0.0;
    }
  }
  return 0.0;
}

double state_latency_value(const Strategy& strategy, InterfaceSet usable,
                           const ProfileTriple& profiles, double x_ms, double payload_bytes) {
  return combine_state_value(strategy, usable,
                             normalized_values(strategy, usable, profiles, x_ms, payload_bytes));
}

double combined_reliability(const Strategy& strategy, const CtmcModel& model,
                            const SteadyState& ss, const ProfileTriple& profiles, double x_ms,
                            double payload_bytes) {
  if (ss.pi.size() != model.size())
    throw ValidationError("steady-state vector does not match the model dimension", "pi");
  const auto cdf =
      normalized_values(strategy, InterfaceSet{InterfaceId::fiber, InterfaceId::c1, InterfaceId::c2},
                        profiles, x_ms, payload_bytes);
  double total = 0.0;
  for (std::size_t s = 0; s < model.size(); ++s) {
    if (ss.pi[s] == 0.0) continue;
    total += ss.pi[s] * combine_state_value(strategy, model.available_interfaces(s), cdf);
  }
  return std::clamp(total, 0.0, 1.0);
}

CurveResult independent_parallel_curve(std::span<const InterfaceProfile> profiles,
                                       std::span<const double> grid_ms, double payload_bytes,
                                       std::span<const double> kappas) {
  if (profiles.empty()) throw ValidationError("need at least one interface", "profiles");
  if (kappas.size() != profiles.size())
    throw ValidationError("one kappa per interface is required", "kappas");
  check_grid(grid_ms);

  CurveResult out;
  out.strategy = profiles.size() == 1 ? "single" : "independent_parallel";
  out.payload_bytes = payload_bytes;
  out.bandwidth_multiplier = 0.0;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (i) out.label += '+';
    out.label += profiles[i].id;
    out.bandwidth_multiplier += kappas[i];
  }
  std::vector<double> values(profiles.size());
  out.points.reserve(grid_ms.size());
  for (double x : grid_ms) {
    for (std::size_t i = 0; i < profiles.size(); ++i)
      values[i] = latency_reliability(profiles[i], x, kappas[i] * payload_bytes);
    out.points.push_back({x, parallel_independent(values)});
  }
  return out;
}

CurveResult single_interface_curve(const InterfaceProfile& profile,
                                   std::span<const double> grid_ms, double payload_bytes) {
  const double kappa[] = {1.0};
  return independent_parallel_curve(std::span<const InterfaceProfile>(&profile, 1), grid_ms,
                                    payload_bytes, kappa);
}

CurveResult reliability_curve(const Strategy& strategy, const CtmcModel& model,
                              const SteadyState& ss, const ProfileTriple& profiles,
                              std::span<const double> grid_ms, double payload_bytes) {
  check_grid(grid_ms);
  CurveResult out;
  out.strategy = std::string(strategy.name());
  out.label = describe(strategy);
  out.payload_bytes = payload_bytes;
  out.gamma = strategy.gamma();
  out.bandwidth_multiplier = bandwidth_multiplier(strategy);
  out.points.reserve(grid_ms.size());
  for (double x : grid_ms)
    out.points.push_back({x, combined_reliability(strategy, model, ss, profiles, x, payload_bytes)});
  return out;
}

CurveResult reliability_curve(const Strategy& strategy, const CtmcModel& model,
                              const ProfileTriple& profiles, std::span<const double> grid_ms,
                              double payload_bytes) {
  return reliability_curve(strategy, model, steady_state(model), profiles, grid_ms, payload_bytes);
}

}  // namespace latrel
