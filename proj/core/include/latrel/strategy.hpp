#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "latrel/ctmc.hpp"
#include "latrel/curve.hpp"
#include "latrel/latency_profile.hpp"

namespace latrel {

enum class StrategyKind { cloning, two_of_three, weighted };

/// Transmission strategy over (fiber, C1, C2).
///
///  - cloning: full payload on every interface, first arrival wins.
///  - two_of_three: three fragments of 2/3 payload each, any two decode.
///  - weighted: full payload on fiber, gamma * B on C1 and (1 - gamma) * B
///    on C2; the cellular path completes when both fragments arrive.
class Strategy {
 public:
  static Strategy cloning() { return Strategy(StrategyKind::cloning, std::nullopt); }
  static Strategy two_of_three() { return Strategy(StrategyKind::two_of_three, std::nullopt); }
  static Strategy weighted(double gamma);

  StrategyKind kind() const noexcept { return kind_; }
  std::optional<double> gamma() const noexcept { return gamma_; }

  /// "cloning", "two_of_three" or "weighted".
  std::string_view name() const noexcept;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  Strategy(StrategyKind kind, std::optional<double> gamma) : kind_(kind), gamma_(gamma) {}

  StrategyKind kind_;
  std::optional<double> gamma_;
};

/// Accepts "cloning", "two_of_three" / "2-of-3", "weighted"; nullopt otherwise.
std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept;

/// Profiles ordered fiber, C1, C2.
using ProfileTriple = std::array<InterfaceProfile, kInterfaceCount>;

/// Payload scaling factor per interface.
std::array<double, kInterfaceCount> kappa_for(const Strategy& strategy);

/// Total bytes sent relative to the payload (sum of kappas).
double bandwidth_multiplier(const Strategy& strategy);

/// Completion probability within x for one system state, given which
/// interfaces are usable.  Uses availability-normalised CDFs because the
/// failure process is carried by the chain.
double state_latency_value(const Strategy& strategy, InterfaceSet usable,
                           const ProfileTriple& profiles, double x_ms, double payload_bytes);

/// Same as state_latency_value with the normalised per-interface CDFs
/// already evaluated (fiber, C1, C2).
double combine_state_value(const Strategy& strategy, InterfaceSet usable,
                           const std::array<double, kInterfaceCount>& cdf);

/// sum_s pi_s * state_latency_value(s).
double combined_reliability(const Strategy& strategy, const CtmcModel& model,
                            const SteadyState& ss, const ProfileTriple& profiles, double x_ms,
                            double payload_bytes);

/// Independent-interface parallel curve 1 - prod(1 - F_i(x, kappa_i B))
/// using availability-scaled curves.
CurveResult independent_parallel_curve(std::span<const InterfaceProfile> profiles,
                                       std::span<const double> grid_ms, double payload_bytes,
                                       std::span<const double> kappas);

CurveResult single_interface_curve(const InterfaceProfile& profile,
                                   std::span<const double> grid_ms, double payload_bytes);

/// Chain-mixed curve of a strategy over a grid.
CurveResult reliability_curve(const Strategy& strategy, const CtmcModel& model,
                              const ProfileTriple& profiles, std::span<const double> grid_ms,
                              double payload_bytes);

CurveResult reliability_curve(const Strategy& strategy, const CtmcModel& model,
                              const SteadyState& ss, const ProfileTriple& profiles,
                              std::span<const double> grid_ms, double payload_bytes);

}  // namespace latrel
