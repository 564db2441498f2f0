#include "latrel/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "latrel/error.hpp"

namespace latrel {

std::string_view interface_name(InterfaceId id) noexcept {
  switch (id) {
    case InterfaceId::fiber: return "fiber";
    case InterfaceId::c1: return "C1";
    case InterfaceId::c2: return "C2";
  }
  return "?";
}

std::string InterfaceSet::to_string() const {
  if (empty()) return "-";
  std::string out;
  for (auto id : {InterfaceId::fiber, InterfaceId::c1, InterfaceId::c2}) {
    if (!contains(id)) continue;
    if (!out.empty()) out += '|';
    out += interface_name(id);
  }
  return out;
}

void validate(const ComponentSpec& spec) {
  if (!(spec.failure_rate >= 0.0) || !std::isfinite(spec.failure_rate))
    throw ValidationError(spec.name + ": failure rate must be finite and >= 0",
                          "failure_rate");
  if (!(spec.restoration_rate > 0.0) || !std::isfinite(spec.restoration_rate))
    throw ValidationError(spec.name + ": restoration rate must be finite and > 0",
                          "restoration_rate");
}

double component_availability(const ComponentSpec& spec) {
  validate(spec);
  return spec.restoration_rate / (spec.failure_rate + spec.restoration_rate);
}

double per_week_from_minutes(double minutes) {
  if (!(minutes > 0.0)) throw ValidationError("duration must be > 0", "minutes");
  return kMinutesPerWeek / minutes;
}

double per_week_from_hours(double hours) {
  if (!(hours > 0.0)) throw ValidationError("duration must be > 0", "hours");
  return kHoursPerWeek / hours;
}

namespace {

// Closed communicating classes of the transition graph.
std::vector<std::vector<std::size_t>> closed_classes(const Eigen::MatrixXd& q) {
  const auto n = static_cast<std::size_t>(q.rows());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && q(u, v) > 0.0 && !reach[s][v]) {
          reach[s][v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> classes;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    bool closed = true;
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v) {
      if (!reach[s][v]) continue;
      if (reach[v][s]) {
        members.push_back(v);
      } else {
        closed = false;
      }
    }
    for (auto m : members) seen[m] = 1;
    if (closed) classes.push_back(std::move(members));
  }
  return classes;
}

}  // namespace

CtmcModel::CtmcModel(std::vector<std::string> component_names, std::vector<StateInfo> states,
                     Eigen::MatrixXd generator)
    : components_(std::move(component_names)),
      states_(std::move(states)),
      generator_(std::move(generator)) {
  const auto n = states_.size();
  if (n == 0) throw ValidationError("chain needs at least one state", "states");
  if (generator_.rows() != static_cast<Eigen::Index>(n) ||
      generator_.cols() != static_cast<Eigen::Index>(n))
    throw ValidationError("generator must be square with one row per state", "generator");

  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double r = generator_(i, j);
      if (!(r >= 0.0) || !std::isfinite(r))
        throw ValidationError("generator off-diagonal entries must be >= 0", "generator", i);
      off += r;
    }
    // Diagonal is defined by the off-diagonals so rows sum to zero exactly.
    generator_(i, i) = -off;
  }

  auto classes = closed_classes(generator_);
  if (classes.size() > 1) {
    std::ostringstream msg;
    msg << "chain has " << classes.size() << " closed classes:";
    for (const auto& cls : classes) {
      msg << " {";
      for (std::size_t k = 0; k < cls.size(); ++k)
        msg << (k ? "," : "") << states_[cls[k]].label;
      msg << '}';
    }
    throw ReducibleChainError(msg.str(), std::move(classes));
  }
}

const StateInfo& CtmcModel::state(std::size_t index) const {
  if (index >= states_.size()) throw std::out_of_range("state index out of range");
  return states_[index];
}

InterfaceSet CtmcModel::available_interfaces(std::size_t index) const {
  return state(index).usable;
}

CtmcModel build_product_model(std::span<const ComponentSpec> components,
                              const UsabilityRule& usable) {
  const std::size_t n = components.size();
  if (n == 0 || n > 16) throw ValidationError("product chain needs 1..16 components", "components");
  for (const auto& c : components) validate(c);

  // Failed-component masks, ordered by failure count then lexicographically
  // by the sorted list of failed indices.
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  std::iota(masks.begin(), masks.end(), 0u);
  auto failed_list = [n](std::uint32_t m) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < n; ++c)
      if (m & (1u << c)) out.push_back(c);
    return out;
  };
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto fa = failed_list(a);
    auto fb = failed_list(b);
    if (fa.size() != fb.size()) return fa.size() < fb.size();
    return fa < fb;
  });

  std::unordered_map<std::uint32_t, std::size_t> index_of;
  std::vector<StateInfo> states;
  states.reserve(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const auto m = masks[i];
    index_of[m] = i;
    std::vector<char> up_storage(n);
    std::string status;
    for (std::size_t c = 0; c < n; ++c) {
      up_storage[c] = (m & (1u << c)) == 0;
      if (c) status += ';';
      status += components[c].name + (up_storage[c] ? "=up" : "=down");
    }
    bool up[16];
    for (std::size_t c = 0; c < n; ++c) up[c] = up_storage[c] != 0;
    states.push_back({"s" + std::to_string(i + 1), std::move(status),
                      usable(std::span<const bool>(up, n))});
  }

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(masks.size(), masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const auto m = masks[i];
    for (std::size_t c = 0; c < n; ++c) {
      const auto flipped = m ^ (1u << c);
      const bool is_up = (m & (1u << c)) == 0;
      q(i, index_of.at(flipped)) +=
          is_up ? components[c].failure_rate : components[c].restoration_rate;
    }
  }

  std::vector<std::string> names;
  for (const auto& c : components) names.push_back(c.name);
  return CtmcModel(std::move(names), std::move(states), std::move(q));
}

CtmcModel build_three_interface_model(const ComponentSpec& fiber, const ComponentSpec& c1,
                                      const ComponentSpec& c2, const ComponentSpec& bs) {
  const ComponentSpec parts[] = {fiber, c1, c2, bs};
  return build_product_model(parts, [](std::span<const bool> up) {
    InterfaceSet set;
    if (up[0]) set.insert(InterfaceId::fiber);
    if (up[1] && up[3]) set.insert(InterfaceId::c1);
    if (up[2] && up[3]) set.insert(InterfaceId::c2);
    return set;
  });
}

CtmcModel build_cellular_subsystem(const ComponentSpec& c1, const ComponentSpec& c2,
                                   const ComponentSpec& bs) {
  validate(c1);
  validate(c2);
  validate(bs);
  auto status = [&](bool u1, bool u2, bool ub) {
    return c1.name + (u1 ? "=up;" : "=down;") + c2.name + (u2 ? "=up;" : "=down;") +
           bs.name + (ub ? "=up" : "=down");
  };
  std::vector<StateInfo> states{
      {"s1", status(true, true, true), {InterfaceId::c1, InterfaceId::c2}},
      {"s2", status(false, true, true), {InterfaceId::c2}},
      {"s3", status(true, false, true), {InterfaceId::c1}},
      {"s4", status(false, false, true), {}},
      {"s5", status(true, true, false), {}},
  };
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(5, 5);
  q(0, 1) = c1.failure_rate;
  q(1, 0) = c1.restoration_rate;
  q(0, 2) = c2.failure_rate;
  q(2, 0) = c2.restoration_rate;
  q(1, 3) = c2.failure_rate;
  q(3, 1) = c2.restoration_rate;
  q(2, 3) = c1.failure_rate;
  q(3, 2) = c1.restoration_rate;
  q(0, 4) = bs.failure_rate;
  q(4, 0) = bs.restoration_rate;
  return CtmcModel({c1.name, c2.name, bs.name}, std::move(states), std::move(q));
}

CtmcModel build_two_state_model(const ComponentSpec& component, InterfaceId iface) {
  const ComponentSpec parts[] = {component};
  return build_product_model(parts, [iface](std::span<const bool> up) {
    return up[0] ? InterfaceSet{iface} : InterfaceSet{};
  });
}

SteadyState steady_state(const CtmcModel& model) {
  const auto& q = model.generator();
  const auto n = q.rows();
  Eigen::MatrixXd a = q.transpose();
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw InfeasibleError("steady-state system is singular", "irreducible");
  Eigen::VectorXd pi = lu.solve(b);

  for (Eigen::Index i = 0; i < n; ++i) {
    if (pi(i) < 0.0) {
      if (pi(i) < -1e-12)
        throw InfeasibleError("steady-state solve produced a negative probability",
                              "pi >= 0");
      pi(i) = 0.0;
    }
  }
  pi /= pi.sum();

  SteadyState out;
  out.pi.assign(pi.data(), pi.data() + n);
  out.residual = (pi.transpose() * q).cwiseAbs().maxCoeff();
  if (out.residual > kSteadyStateResidualLimit)
    throw InfeasibleError("steady-state residual " + std::to_string(out.residual) +
                              " exceeds tolerance",
                          "pi Q = 0");
  return out;
}

double probability_where(const CtmcModel& model, const SteadyState& ss,
                         const std::function<bool(InterfaceSet)>& pred) {
  if (ss.pi.size() != model.size())
    throw ValidationError("steady state does not match model", "pi");
  double total = 0.0;
  for (std::size_t s = 0; s < model.size(); ++s)
    if (pred(model.available_interfaces(s))) total += ss.pi[s];
  return total;
}

}  // namespace latrel
