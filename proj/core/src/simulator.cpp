#include "latrel/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "latrel/error.hpp"

namespace latrel {
namespace {

constexpr auto kFiber = static_cast<std::size_t>(InterfaceId::fiber);
constexpr auto kC1 = static_cast<std::size_t>(InterfaceId::c1);
constexpr auto kC2 = static_cast<std::size_t>(InterfaceId::c2);

double draw_latency(const InterfaceProfile& profile, double payload_bytes, Rng& rng) {
  const double mu = mean_latency(profile, payload_bytes);
  return std::max(0.0, rng.normal(mu, profile.sigma_ratio * mu));
}

struct Replication {
  std::vector<SampleRecord> records;
  std::vector<std::size_t> state_counts;
};

Replication run_replication(const CtmcModel& model, const ProfileTriple& profiles,
                            const SimConfig& config, std::size_t epochs, std::uint64_t index) {
  Rng trajectory_rng = Rng::derive(config.seed, 2 * index);
  Rng latency_rng = Rng::derive(config.seed, 2 * index + 1);
  const double horizon_weeks =
      static_cast<double>(epochs) * config.sample_interval_minutes / kMinutesPerWeek;
  Replication rep;
  if (epochs == 0) return rep;
  const auto trajectory = simulate_trajectory(model, horizon_weeks, trajectory_rng);
  rep.records = sample_latencies(trajectory, model, config.strategy, profiles,
                                 config.payload_bytes, config.sample_interval_minutes,
                                 latency_rng);
  rep.records.resize(std::min(rep.records.size(), epochs));
  rep.state_counts.assign(model.size(), 0);
  for (const auto& r : rep.records) ++rep.state_counts[r.state];
  return rep;
}

}  // namespace

void validate(const SimConfig& config) {
  if (!(config.duration_weeks > 0.0) || !std::isfinite(config.duration_weeks))
    throw ValidationError("simulation duration must be > 0", "duration_weeks");
  if (!(config.sample_interval_minutes > 0.0) || !std::isfinite(config.sample_interval_minutes))
    throw ValidationError("sample interval must be > 0", "sample_interval_minutes");
  if (!(config.payload_bytes >= 0.0))
    throw ValidationError("payload must be >= 0", "payload_bytes");
}

std::size_t epoch_count(const SimConfig& config) {
  validate(config);
  // Small slack so that durations that are exact multiples of the interval
  // are not lost to rounding.
  return static_cast<std::size_t>(
      std::floor(config.duration_weeks * kMinutesPerWeek / config.sample_interval_minutes + 1e-9));
}

std::vector<Sojourn> simulate_trajectory(const CtmcModel& model, double duration_weeks, Rng& rng) {
  if (!(duration_weeks > 0.0)) throw ValidationError("duration must be > 0", "duration_weeks");
  const auto& q = model.generator();
  const auto n = model.size();
  std::vector<Sojourn> out;
  std::size_t state = 0;
  double t = 0.0;
  while (t < duration_weeks) {
    const double exit = model.exit_rate(state);
    if (exit <= 0.0) {
      out.push_back({state, duration_weeks - t});
      break;
    }
    const double hold = rng.exponential(exit);
    if (t + hold >= duration_weeks) {
      out.push_back({state, duration_weeks - t});
      break;
    }
    out.push_back({state, hold});
    t += hold;

    double u = rng.uniform() * exit;
    std::size_t next = state;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == state) continue;
      const double r = q(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(j));
      if (r <= 0.0) continue;
      next = j;
      if (u < r) break;
      u -= r;
    }
    state = next;
  }
  return out;
}

double draw_completion_latency(const Strategy& strategy, InterfaceSet usable,
                               const ProfileTriple& profiles, double payload_bytes, Rng& rng) {
  const auto kappa = kappa_for(strategy);
  const bool fiber = usable.contains(InterfaceId::fiber);
  const bool c1 = usable.contains(InterfaceId::c1);
  const bool c2 = usable.contains(InterfaceId::c2);

  switch (strategy.kind()) {
    case StrategyKind::cloning: {
      double best = kFailureLatency;
      for (std::size_t i = 0; i < kInterfaceCount; ++i)
        if (usable.contains(static_cast<InterfaceId>(i)))
          best = std::min(best, draw_latency(profiles[i], kappa[i] * payload_bytes, rng));
      return best;
    }
    case StrategyKind::two_of_three: {
      if (usable.size() < 2) return kFailureLatency;
      double first = kFailureLatency;
      double second = kFailureLatency;
      for (std::size_t i = 0; i < kInterfaceCount; ++i) {
        if (!usable.contains(static_cast<InterfaceId>(i))) continue;
        const double x = draw_latency(profiles[i], kappa[i] * payload_bytes, rng);
        if (x < first) {
          second = first;
          first = x;
        } else if (x < second) {
          second = x;
        }
      }
      return second;
    }
    case StrategyKind::weighted: {
      double best = kFailureLatency;
      if (fiber) best = draw_latency(profiles[kFiber], kappa[kFiber] * payload_bytes, rng);
      if (c1 && c2) {
        const double a = draw_latency(profiles[kC1], kappa[kC1] * payload_bytes, rng);
        const double b = draw_latency(profiles[kC2], kappa[kC2] * payload_bytes, rng);
        best = std::min(best, std::max(a, b));
      }
      return best;
    }
  }
  return kFailureLatency;
}

std::vector<SampleRecord> sample_latencies(std::span<const Sojourn> trajectory,
                                           const CtmcModel& model, const Strategy& strategy,
                                           const ProfileTriple& profiles, double payload_bytes,
                                           double interval_minutes, Rng& rng) {
  if (!(interval_minutes > 0.0))
    throw ValidationError("sample interval must be > 0", "sample_interval_minutes");
  std::vector<SampleRecord> out;
  double total_minutes = 0.0;
  for (const auto& s : trajectory) total_minutes += s.weeks * kMinutesPerWeek;
  out.reserve(static_cast<std::size_t>(total_minutes / interval_minutes) + 1);

  double start = 0.0;  // sojourn start, minutes
  std::size_t k = 0;
  for (const auto& s : trajectory) {
    const double end = start + s.weeks * kMinutesPerWeek;
    const auto usable = model.available_interfaces(s.state);
    for (double t = static_cast<double>(k) * interval_minutes; t < end;
         t = static_cast<double>(++k) * interval_minutes) {
      out.push_back({t, s.state, draw_completion_latency(strategy, usable, profiles,
                                                         payload_bytes, rng)});
    }
    start = end;
  }
  return out;
}

CurveResult empirical_curve(std::span<const SampleRecord> records, std::span<const double> grid_ms) {
  if (records.empty()) throw ValidationError("no simulation records", "records");
  check_grid(grid_ms);
  std::vector<double> delivered;
  delivered.reserve(records.size());
  for (const auto& r : records)
    if (!r.failed()) delivered.push_back(r.latency_ms);
  std::sort(delivered.begin(), delivered.end());

  CurveResult out;
  out.label = "empirical";
  out.strategy = "empirical";
  const double total = static_cast<double>(records.size());
  out.points.reserve(grid_ms.size());
  for (double x : grid_ms) {
    const auto count = std::upper_bound(delivered.begin(), delivered.end(), x) - delivered.begin();
    out.points.push_back({x, static_cast<double>(count) / total});
  }
  return out;
}

SimulationResult simulate(const CtmcModel& model, const ProfileTriple& profiles,
                          const SimConfig& config, unsigned replications) {
  validate(config);
  if (replications == 0) throw ValidationError("replications must be >= 1", "replications");
  for (const auto& p : profiles) validate(p);

  const std::size_t total = epoch_count(config);
  std::vector<std::future<Replication>> jobs;
  jobs.reserve(replications);
  for (unsigned r = 0; r < replications; ++r) {
    const std::size_t epochs = total / replications + (r < total % replications ? 1 : 0);
    const auto policy = replications == 1 ? std::launch::deferred : std::launch::async;
    jobs.push_back(std::async(policy, run_replication, std::cref(model), std::cref(profiles),
                              std::cref(config), epochs, static_cast<std::uint64_t>(r)));
  }

  SimulationResult result;
  result.records.reserve(total);
  std::vector<std::size_t> counts(model.size(), 0);
  for (auto& job : jobs) {
    auto rep = job.get();
    result.records.insert(result.records.end(), rep.records.begin(), rep.records.end());
    for (std::size_t s = 0; s < rep.state_counts.size(); ++s) counts[s] += rep.state_counts[s];
  }
  for (const auto& r : result.records)
    if (r.failed()) ++result.failures;
  result.state_fractions.resize(model.size(), 0.0);
  if (!result.records.empty())
    for (std::size_t s = 0; s < model.size(); ++s)
      result.state_fractions[s] =
          static_cast<double>(counts[s]) / static_cast<double>(result.records.size());
  return result;
}

}  // namespace latrel
