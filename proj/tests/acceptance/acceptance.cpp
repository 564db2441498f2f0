// Acceptance gate: prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any selected criterion fails.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "case_study.hpp"
#include "commands.hpp"
#include "latrel/calibration.hpp"
#include "latrel/curve.hpp"
#include "latrel/gamma_optimizer.hpp"
#include "latrel/reliability.hpp"
#include "latrel/simulator.hpp"
#include "latrel/strategy.hpp"
#include "oracles.hpp"
#include "scenario.hpp"

namespace {

using namespace latrel;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string ok(bool b) { return b ? "ok" : "VIOLATED"; }

const cli::ScenarioConfig& case_study_config() {
  static const auto cfg =
      cli::load_scenario_file(std::string(LATREL_SOURCE_DIR) + "/scenarios/case_study.json");
  return cfg;
}

std::vector<double> case_study_grid() {
  const auto& g = case_study_config().grid;
  return make_grid(g.start_ms, g.stop_ms, g.step_ms);
}

// 1. Calibration against the published rates.
Outcome calibration_reproduction() {
  const auto t0 = Clock::now();
  const auto r = calibrate_cellular({0.98, 0.98, 0.9995, 50.4, 50.4, 50.4});
  const double fiber = two_state_failure_rate(0.998, testing::kFiberMu);
  const double dt = seconds_since(t0);
  const double e_c1 = rel_err(r.lambda_c1, 1.0013);
  const double e_c2 = rel_err(r.lambda_c2, 1.0013);
  const double e_bs = rel_err(r.lambda_bs, 0.0267);
  const double e_f = rel_err(fiber, 0.0561);
  const bool pass = e_c1 <= 0.02 && e_c2 <= 0.02 && e_bs <= 0.05 && e_f <= 0.005 && dt < 1.0;
  return {pass, fmt::format("lambda_C={:.6f} ({:.2f}% off, limit 2%), lambda_BS={:.6f} ({:.2f}% "
                            "off, limit 5%), lambda_fiber={:.6f} ({:.3f}% off, limit 0.5%), "
                            "{:.3f}s (limit 1s)",
                            r.lambda_c1, 100 * e_c1, r.lambda_bs, 100 * e_bs, fiber, 100 * e_f, dt)};
}

// 2. Calibrated chains reproduce their inputs.
Outcome round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(20160523);
  std::uniform_real_distribution<double> bs_down(1e-5, 5e-3), extra(0.0, 0.05), mu(1.0, 500.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double u_bs = bs_down(gen);
    const double u_c = 2.0 * u_bs + extra(gen);
    const double mc = mu(gen);
    const AvailabilityInputs in{1.0 - u_c, 1.0 - u_c, 1.0 - u_bs, mc, mc, mu(gen)};
    const auto r = calibrate_cellular(in);
    const auto m = build_cellular_subsystem(r.c1(), r.c2(), r.bs());
    const auto u = cellular_unavailabilities(m, steady_state(m));
    worst = std::max({worst, std::abs(u[0] - u_c), std::abs(u[1] - u_c), std::abs(u[2] - u_bs)});
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-9 && dt < 5.0,
          fmt::format("100 triples, max unavailability error {:.2e} (limit 1e-9), {:.3f}s (limit 5s)",
                      worst, dt)};
}

// 3. Identical fragments: binomial form.
Outcome two_of_three_identity() {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double f = i / 100.0;
    const double closed = 3 * f * f * (1 - f) + f * f * f;
    worst = std::max(worst, std::abs(two_of_three_cdf(f, f, f) - closed));
  }
  return {worst <= 1e-12, fmt::format("101 grid points, max error {:.2e} (limit 1e-12)", worst)};
}

// 4. Exhaustive enumeration of the 8 arrival patterns.
Outcome brute_force_oracle() {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_two = 0.0, worst_first = 0.0, worst_last = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double f[3] = {u(gen), u(gen), u(gen)};
    double two = 0.0, any = 0.0, all = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
      double p = 1.0;
      int hits = 0;
      for (int i = 0; i < 3; ++i) {
        const bool in_time = (mask >> i) & 1;
        p *= in_time ? f[i] : 1.0 - f[i];
        hits += in_time;
      }
      if (hits >= 2) two += p;
      if (hits >= 1) any += p;  // min latency within x
      if (hits == 3) all += p;  // max latency within x
    }
    worst_two = std::max(worst_two, std::abs(two_of_three_cdf(f[0], f[1], f[2]) - two));
    worst_first = std::max(worst_first, std::abs(first_arrival_cdf({f[0], f[1], f[2]}) - any));
    worst_last = std::max(worst_last, std::abs(last_arrival_cdf({f[0], f[1], f[2]}) - all));
  }
  const bool pass = worst_two <= 1e-12 && worst_first <= 1e-12 && worst_last <= 1e-12;
  return {pass, fmt::format("1000 samples, max error 2-of-3 {:.2e}, first {:.2e}, last {:.2e} "
                            "(limit 1e-12)",
                            worst_two, worst_first, worst_last)};
}

// 5. Cloning ceiling.
Outcome ceiling_reproduction() {
  const auto m = testing::case_study_model();
  const auto ss = steady_state(m);
  const auto p = testing::case_study_profiles();
  const double top = combined_reliability(Strategy::cloning(), m, ss, p, 1e6, testing::kPayload);
  const double expected = 1.0 - 0.002 * 0.001;
  const bool pass = top > 0.99999 && std::abs(top - expected) <= 2e-6;
  return {pass, fmt::format("asymptotic cloning reliability {:.9f} (> 0.99999, |x - {:.6f}| = "
                            "{:.2e} <= 2e-6)",
                            top, expected, std::abs(top - expected))};
}

// 6. Weighted vs cloning at four nines.
Outcome weighted_reduction() {
  const auto t0 = Clock::now();
  const auto m = testing::case_study_model();
  const auto ss = steady_state(m);
  const auto p = testing::case_study_profiles();
  const auto grid = case_study_grid();
  const double gamma = optimize_gamma(p[1], p[2], testing::kPayload).gamma_opt;
  const auto clone = reliability_curve(Strategy::cloning(), m, ss, p, grid, testing::kPayload);
  const auto weighted =
      reliability_curve(Strategy::weighted(gamma), m, ss, p, grid, testing::kPayload);
  const auto xc = latency_at_reliability(clone, 0.9999);
  const auto xw = latency_at_reliability(weighted, 0.9999);
  const double dt = seconds_since(t0);
  if (!xc || !xw) return {false, "a curve never reaches 0.9999 on the grid"};
  const double reduction = 1.0 - *xw / *xc;
  const bool pass = reduction >= 0.15 && reduction <= 0.40 && dt < 10.0;
  return {pass, fmt::format("x@0.9999 cloning {:.2f} ms, weighted(gamma={:.4f}) {:.2f} ms, "
                            "reduction {:.1f}% (band 15-40%), {:.3f}s (limit 10s)",
                            *xc, gamma, *xw, 100 * reduction, dt)};
}

// 7. Gamma optimizer.
Outcome gamma_optimizer() {
  const auto hs = preset_profile("HSDPA", 0.98);
  const auto edge = preset_profile("EDGE", 0.98);
  const double g_same = optimize_gamma(hs, hs, 1500.0).gamma_opt;

  // Independent grid search at 1e-3 over the density form.
  double oracle_gamma = 0.0, oracle_best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1000; ++i) {
    const double g = i / 1000.0;
    const double e = oracle::expected_max_by_density(mean_latency(hs, g * 1500.0),
                                                     mean_latency(edge, (1 - g) * 1500.0));
    if (e < oracle_best) {
      oracle_best = e;
      oracle_gamma = g;
    }
  }
  const double g_he = optimize_gamma(hs, edge, 1500.0).gamma_opt;

  const auto flat = make_profile("flat", 0.0, 200.0, 1.0);
  const double e_iid = expected_max_latency(flat, flat, 1500.0, 0.5);
  const double closed = 100.0 + 10.0 / std::sqrt(std::numbers::pi);

  const bool a = std::abs(g_same - 0.5) <= 1e-4;
  const bool b = std::abs(g_he - oracle_gamma) <= 0.02;
  const bool c = std::abs(e_iid - closed) <= 1e-4;
  return {a && b && c,
          fmt::format("identical profiles gamma={:.6f} [{}]; HSDPA/EDGE gamma={:.5f} vs oracle "
                      "{:.3f} [{}]; E[max iid]={:.6f} vs {:.6f} [{}]",
                      g_same, ok(a), g_he, oracle_gamma, ok(b), e_iid, closed, ok(c))};
}

// 8. Monte Carlo agreement.  Epochs are spaced one week apart so that
// successive samples of the chain state are effectively independent; the
// occupancy bound assumes independent draws.
Outcome simulation_agreement() {
  const auto m = testing::case_study_model();
  const auto ss = steady_state(m);
  const auto p = testing::case_study_profiles();
  const auto grid = case_study_grid();
  const double gamma = optimize_gamma(p[1], p[2], testing::kPayload).gamma_opt;
  constexpr double kEpochs = 1e6;

  bool pass = true;
  std::string detail;
  for (auto s : {Strategy::cloning(), Strategy::two_of_three(), Strategy::weighted(gamma)}) {
    const auto t0 = Clock::now();
    SimConfig cfg;
    cfg.sample_interval_minutes = kMinutesPerWeek;
    cfg.duration_weeks = kEpochs;
    cfg.seed = 20160523;
    cfg.strategy = s;
    cfg.payload_bytes = testing::kPayload;
    const auto sim = simulate(m, p, cfg, 4);
    const auto emp = empirical_curve(sim.records, grid);
    const auto ana = reliability_curve(s, m, ss, p, grid, testing::kPayload);
    const double dt = seconds_since(t0);

    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double a = ana.points[i].reliability;
      if (a < 0.001 || a > 0.999) continue;
      sup = std::max(sup, std::abs(a - emp.points[i].reliability));
    }
    const double n = static_cast<double>(sim.records.size());
    std::size_t outside = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      const double bound = 4.0 * std::sqrt(ss.pi[k] * (1.0 - ss.pi[k]) / n);
      if (std::abs(sim.state_fractions[k] - ss.pi[k]) > bound) ++outside;
    }
    const bool ok_s = sup <= 0.003 && outside == 0 && dt < 60.0 && n == kEpochs;
    pass &= ok_s;
    detail += fmt::format("{}{}: sup {:.5f} (limit 0.003), states outside 4-sigma {}, {:.1f}s",
                          detail.empty() ? "" : "; ", s.name(), sup, outside, dt);
  }
  return {pass, detail + " (N=1e6 epochs each, limit 60s)"};
}

// 9. Monotonicity and the strategy ordering.
Outcome monotonicity() {
  const auto& cfg = case_study_config();
  const auto r = cli::resolve(cfg);
  const auto curves = cli::compare_curves(cfg, r);
  std::size_t non_monotone = 0;
  for (const auto& c : curves) non_monotone += !is_non_decreasing(c);

  const auto grid = case_study_grid();
  const auto b = cfg.payload_bytes;
  const auto clone = reliability_curve(Strategy::cloning(), r.model, r.steady, r.profiles, grid, b);
  const auto two =
      reliability_curve(Strategy::two_of_three(), r.model, r.steady, r.profiles, grid, b);
  const auto weighted =
      reliability_curve(Strategy::weighted(r.gamma), r.model, r.steady, r.profiles, grid, b);

  double cw_worst = 0.0, cw_at = 0.0, wt_worst = 0.0, wt_at = 0.0;
  std::size_t cw_count = 0, wt_count = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double cw = weighted.points[i].reliability - clone.points[i].reliability;
    const double wt = two.points[i].reliability - weighted.points[i].reliability;
    if (cw > 1e-12) ++cw_count;
    if (wt > 1e-12) ++wt_count;
    if (cw > cw_worst) cw_worst = cw, cw_at = grid[i];
    if (wt > wt_worst) wt_worst = wt, wt_at = grid[i];
  }
  const bool pass = non_monotone == 0 && cw_count == 0 && wt_count == 0;
  return {pass,
          fmt::format("{} curves, {} non-monotone; cloning >= weighted violated at {}/{} points "
                      "(max excess {:.4f} at x={} ms); weighted >= 2-of-3 violated at {}/{} "
                      "points (max excess {:.2e} at x={} ms)",
                      curves.size(), non_monotone, cw_count, grid.size(), cw_worst, cw_at,
                      wt_count, grid.size(), wt_worst, wt_at)};
}

// 10. Determinism of the simulate command.
Outcome determinism() {
  cli::SimulateOptions opt;
  opt.samples = 200000;
  opt.replications = 4;
  const auto a = cli::run_simulate(case_study_config(), opt);
  const auto b = cli::run_simulate(case_study_config(), opt);
  bool same = a.size() == b.size();
  std::size_t bytes = 0;
  for (std::size_t i = 0; same && i < a.size(); ++i) {
    same = a[i].name == b[i].name && a[i].content == b[i].content;
    bytes += a[i].content.size();
  }
  return {same, fmt::format("{} files, {} bytes, identical: {}", a.size(), bytes, same)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "calibration reproduction", calibration_reproduction},
      {2, "calibration round trip", round_trip},
      {3, "2-of-3 binomial identity", two_of_three_identity},
      {4, "combinator enumeration oracle", brute_force_oracle},
      {5, "cloning reliability ceiling", ceiling_reproduction},
      {6, "weighted vs cloning latency reduction", weighted_reduction},
      {7, "gamma optimizer", gamma_optimizer},
      {8, "simulation agreement", simulation_agreement},
      {9, "monotonicity and strategy ordering", monotonicity},
      {10, "simulate determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latrel acceptance suite"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number(s) to run; default all")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    fmt::print("[{}] {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
