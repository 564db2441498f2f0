#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latrel {

enum class InterfaceId : std::uint8_t { fiber = 0, c1 = 1, c2 = 2 };

inline constexpr std::size_t kInterfaceCount = 3;

std::string_view interface_name(InterfaceId id) noexcept;

/// Set of usable interfaces in one system state.
class InterfaceSet {
 public:
  constexpr InterfaceSet() = default;
  constexpr InterfaceSet(std::initializer_list<InterfaceId> ids) {
    for (auto id : ids) insert(id);
  }

  constexpr void insert(InterfaceId id) noexcept { bits_ |= bit(id); }
  constexpr bool contains(InterfaceId id) const noexcept { return (bits_ & bit(id)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(((bits_ >> 0) & 1u) + ((bits_ >> 1) & 1u) + ((bits_ >> 2) & 1u));
  }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  /// "fiber|C1|C2", or "-" when empty.
  std::string to_string() const;

  friend constexpr bool operator==(InterfaceSet, InterfaceSet) = default;

 private:
  static constexpr std::uint8_t bit(InterfaceId id) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(id));
  }
  std::uint8_t bits_ = 0;
};

/// Failure and restoration rates of a component, in events per week.
struct ComponentSpec {
  std::string name;
  double failure_rate = 0.0;
  double restoration_rate = 1.0;
};

void validate(const ComponentSpec& spec);

/// mu / (lambda + mu).
double component_availability(const ComponentSpec& spec);

inline constexpr double kMinutesPerWeek = 10080.0;
inline constexpr double kHoursPerWeek = 168.0;

/// Rate per week of an event whose mean spacing is given in minutes/hours.
double per_week_from_minutes(double minutes);
double per_week_from_hours(double hours);

struct StateInfo {
  std::string label;
  std::string component_status;
  InterfaceSet usable;
};

/// Thrown when a generator has more than one closed communicating class, so
/// the stationary distribution is not unique.
class ReducibleChainError : public std::runtime_error {
 public:
  ReducibleChainError(const std::string& message,
                      std::vector<std::vector<std::size_t>> closed_classes)
      : std::runtime_error(message), closed_classes_(std::move(closed_classes)) {}

  const std::vector<std::vector<std::size_t>>& closed_classes() const noexcept {
    return closed_classes_;
  }

 private:
  std::vector<std::vector<std::size_t>> closed_classes_;
};

/// Continuous-time Markov chain over labelled system states.  State 0 is the
/// initial (all components up) state.  The generator is validated on
/// construction: rows sum to zero, off-diagonals are non-negative and the
/// chain has a single closed class.  Immutable afterwards.
class CtmcModel {
 public:
  CtmcModel(std::vector<std::string> component_names, std::vector<StateInfo> states,
            Eigen::MatrixXd generator);

  std::size_t size() const noexcept { return states_.size(); }
  const Eigen::MatrixXd& generator() const noexcept { return generator_; }
  std::span<const StateInfo> states() const noexcept { return states_; }
  const StateInfo& state(std::size_t index) const;
  const std::vector<std::string>& component_names() const noexcept { return components_; }

  /// Throws std::out_of_range for a bad index.
  InterfaceSet available_interfaces(std::size_t index) const;

  /// Total exit rate -Q[s][s].
  double exit_rate(std::size_t index) const { return -generator_(index, index); }

 private:
  std::vector<std::string> components_;
  std::vector<StateInfo> states_;
  Eigen::MatrixXd generator_;
};

/// Maps the up/down status vector of the components to the usable
/// interfaces.
using UsabilityRule = std::function<InterfaceSet(std::span<const bool> up)>;

/// Product chain of independently failing components.  States are ordered
/// by number of failed components, ties broken lexicographically by the
/// list of failed component indices.
CtmcModel build_product_model(std::span<const ComponentSpec> components,
                              const UsabilityRule& usable);

/// Fiber, two cellular links and the base station they share: 16 states.
/// Fiber is usable iff up; C_i is usable iff C_i and the base station are up.
CtmcModel build_three_interface_model(const ComponentSpec& fiber, const ComponentSpec& c1,
                                      const ComponentSpec& c2, const ComponentSpec& bs);

/// Five-state chain of the cellular pair with a common-cause base station
/// failure: 1 both up, 2 C1 down, 3 C2 down, 4 both down, 5 BS down.
CtmcModel build_cellular_subsystem(const ComponentSpec& c1, const ComponentSpec& c2,
                                   const ComponentSpec& bs);

/// Single component alternating up/down; usable set is {iface} when up.
CtmcModel build_two_state_model(const ComponentSpec& component,
                                InterfaceId iface = InterfaceId::fiber);

struct SteadyState {
  std::vector<double> pi;
  double residual = 0.0;  // max |(pi Q)_j|
};

inline constexpr double kSteadyStateResidualLimit = 1e-10;

/// Solves pi Q = 0, sum(pi) = 1 by replacing one balance equation with the
/// normalisation row.
SteadyState steady_state(const CtmcModel& model);

/// Probability mass of the states whose usable set satisfies `pred`.
double probability_where(const CtmcModel& model, const SteadyState& ss,
                         const std::function<bool(InterfaceSet)>& pred);

}  // namespace latrel
