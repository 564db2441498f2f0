#include "latrel/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "latrel/error.hpp"

namespace latrel {
namespace {

void check_availability(double a, const char* field) {
  if (!(a > 0.0 && a <= 1.0)) throw ValidationError(std::string(field) + " must lie in (0, 1]", field);
}

void check_rate(double mu, const char* field) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw ValidationError(std::string(field) + " must be finite and > 0", field);
}

double clamp_tiny_negative(double v, double tol, const std::string& constraint,
                           const std::string& what) {
  if (v >= 0.0) return v;
  if (v > -tol) return 0.0;
  throw InfeasibleError(what + " = " + std::to_string(v) + " is negative", constraint);
}

// C1 unusable, C2 unusable, BS down for the five-state chain.
std::array<double, 3> unavailabilities(const std::array<double, 5>& p) {
  return {p[1] + p[3] + p[4], p[2] + p[3] + p[4], p[4]};
}

std::array<double, 5> chain_pi(double lambda_c, double lambda_bs, const AvailabilityInputs& in) {
  auto model = build_cellular_subsystem({"C1", lambda_c, in.mu_c1}, {"C2", lambda_c, in.mu_c2},
                                        {"BS", lambda_bs, in.mu_bs});
  auto ss = steady_state(model);
  return {ss.pi[0], ss.pi[1], ss.pi[2], ss.pi[3], ss.pi[4]};
}

// Unconstrained least-squares solution of the balance system, unknowns
// (lambda_C1, lambda_C2, lambda_BS, mu_C1, mu_C2, mu_BS), plus its residual.
std::pair<Eigen::Matrix<double, 6, 1>, double> solve_balance(const CellularStateProbabilities& p,
                                                            double mu_c1, double mu_c2,
                                                            double mu_bs) {
  const auto [p1, p2, p3, p4, p5] = p;
  Eigen::Matrix<double, 10, 6> m;
  // clang-format off
  m << -p1, -p1, -p1,  p2,  p3,  p5,
        p1, -p2,   0, -p2,  p4,   0,
       -p3,  p1,   0,  p4, -p3,   0,
        p3,  p2,   0, -p4, -p4,   0,
         0,   0,  p1,   0,   0, -p5,
        -1,   1,   0,   0,   0,   0,
         0,   0,   0,  -1,   1,   0,
         0,   0,   0,   1,   0,   0,
         0,   0,   0,   0,   1,   0,
         0,   0,   0,   0,   0,   1;
  // clang-format on
  Eigen::Matrix<double, 10, 1> rhs = Eigen::Matrix<double, 10, 1>::Zero();
  rhs(7) = mu_c1;
  rhs(8) = mu_c2;
  rhs(9) = mu_bs;

  Eigen::Matrix<double, 6, 1> x = m.colPivHouseholderQr().solve(rhs);
  return {x, (m * x - rhs).norm()};
}

}  // namespace

void validate(const AvailabilityInputs& in) {
  check_availability(in.a_c1, "A_C1");
  check_availability(in.a_c2, "A_C2");
  check_availability(in.a_bs, "A_BS");
  check_rate(in.mu_c1, "mu_C1");
  check_rate(in.mu_c2, "mu_C2");
  check_rate(in.mu_bs, "mu_BS");
  if (1.0 - in.a_c1 < 1.0 - in.a_bs)
    throw ValidationError("C1 must be down whenever the base station is down (A_C1 <= A_BS)",
                          "A_C1");
  if (1.0 - in.a_c2 < 1.0 - in.a_bs)
    throw ValidationError("C2 must be down whenever the base station is down (A_C2 <= A_BS)",
                          "A_C2");
}

CellularStateProbabilities state_probabilities_from_availabilities(const AvailabilityInputs& in) {
  validate(in);
  Eigen::Matrix<double, 6, 5> m;
  // clang-format off
  m << 0, 1,  0, 1,  1,
       0, 0,  1, 1,  1,
       0, 1, -1, 0,  0,
       0, 0,  0, 1, -1,
       0, 0,  0, 0,  1,
       1, 1,  1, 1,  1;
  // clang-format on
  Eigen::Matrix<double, 6, 1> rhs;
  rhs << 1.0 - in.a_c1, 1.0 - in.a_c2, 0.0, 0.0, 1.0 - in.a_bs, 1.0;

  Eigen::Matrix<double, 5, 1> pi = m.colPivHouseholderQr().solve(rhs);
  const double residual = (m * pi - rhs).cwiseAbs().maxCoeff();
  if (residual > kAvailabilitySystemTolerance)
    throw InfeasibleError("availability system is inconsistent (residual " +
                              std::to_string(residual) + "); A_C1 must equal A_C2",
                          "pi2 = pi3");

  CellularStateProbabilities out{};
  const char* constraints[] = {"pi1 >= 0: 2(1 - A_C) - 2(1 - A_BS) <= 1",
                               "pi2 >= 0: 1 - A_C1 >= 2(1 - A_BS)",
                               "pi3 >= 0: 1 - A_C2 >= 2(1 - A_BS)", "pi4 >= 0", "pi5 >= 0"};
  for (int i = 0; i < 5; ++i)
    out[i] = clamp_tiny_negative(pi(i), 1e-14, constraints[i], "pi" + std::to_string(i + 1));
  return out;
}

BalanceFit failure_rates_from_balance(const CellularStateProbabilities& p, double mu_c1,
                                      double mu_c2, double mu_bs) {
  check_rate(mu_c1, "mu_C1");
  check_rate(mu_c2, "mu_C2");
  check_rate(mu_bs, "mu_BS");
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw ValidationError("state probabilities must lie in [0, 1]", "pi", i);
    total += p[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("state probabilities must sum to 1", "pi");

  const auto [x, residual] = solve_balance(p, mu_c1, mu_c2, mu_bs);
  BalanceFit fit;
  const double tol = 1e-12 * std::max({mu_c1, mu_c2, mu_bs});
  fit.lambda_c1 = clamp_tiny_negative(x(0), tol, "lambda_C1 >= 0", "lambda_C1");
  fit.lambda_c2 = clamp_tiny_negative(x(1), tol, "lambda_C2 >= 0", "lambda_C2");
  fit.lambda_bs = clamp_tiny_negative(x(2), tol, "lambda_BS >= 0", "lambda_BS");
  fit.mu_c1 = x(3);
  fit.mu_c2 = x(4);
  fit.mu_bs = x(5);
  fit.residual = residual;
  return fit;
}

std::array<double, 3> cellular_unavailabilities(const CtmcModel& subsystem,
                                                const SteadyState& ss) {
  if (subsystem.size() != 5 || ss.pi.size() != 5)
    throw ValidationError("expected the five-state cellular subsystem", "model");
  return unavailabilities({ss.pi[0], ss.pi[1], ss.pi[2], ss.pi[3], ss.pi[4]});
}

CalibratedRates calibrate_cellular(const AvailabilityInputs& in) {
  const auto pi = state_probabilities_from_availabilities(in);
  const auto [seed, seed_residual] = solve_balance(pi, in.mu_c1, in.mu_c2, in.mu_bs);

  CalibratedRates out;
  out.mu_c1 = in.mu_c1;
  out.mu_c2 = in.mu_c2;
  out.mu_bs = in.mu_bs;
  out.balance_residual = seed_residual;

  const double target_c = 1.0 - in.a_c1;
  const double target_bs = 1.0 - in.a_bs;

  auto mismatch = [&](double lc, double lb) {
    const auto u = unavailabilities(chain_pi(lc, lb, in));
    return Eigen::Vector2d(u[0] - target_c, u[2] - target_bs);
  };

  // The least-squares fit is only a starting point and can come out negative
  // when the restoration rates differ; fall back to the two-state estimate.
  auto start = [](double fitted, double mu, double u) {
    if (!(u > 0.0)) return 0.0;
    return fitted > 0.0 ? fitted : mu * u / (1.0 - u);
  };
  Eigen::Vector2d x(start(seed(0), in.mu_c1, target_c), start(seed(2), in.mu_bs, target_bs));
  Eigen::Vector2d f = mismatch(x(0), x(1));

  // Newton iteration with a forward-difference Jacobian.  Components whose
  // target unavailability is zero stay pinned at rate zero.
  const bool free_c = target_c > 0.0;
  const bool free_bs = target_bs > 0.0;
  int it = 0;
  for (; it < 100 && f.cwiseAbs().maxCoeff() > 1e-14; ++it) {
    Eigen::Matrix2d jac = Eigen::Matrix2d::Identity();
    for (int k = 0; k < 2; ++k) {
      if ((k == 0 && !free_c) || (k == 1 && !free_bs)) continue;
      const double h = std::max(1e-7 * std::abs(x(k)), 1e-12);
      Eigen::Vector2d xh = x;
      xh(k) += h;
      jac.col(k) = (mismatch(xh(0), xh(1)) - f) / h;
    }
    Eigen::Vector2d g = f;
    if (!free_c) g(0) = 0.0;
    if (!free_bs) g(1) = 0.0;
    Eigen::Vector2d step = jac.fullPivLu().solve(g);
    // Damp the step to keep rates non-negative and the residual decreasing.
    double t = 1.0;
    Eigen::Vector2d next, fn;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      next = (x - t * step).cwiseMax(0.0);
      if (!free_c) next(0) = 0.0;
      if (!free_bs) next(1) = 0.0;
      fn = mismatch(next(0), next(1));
      if (fn.cwiseAbs().maxCoeff() < f.cwiseAbs().maxCoeff()) break;
    }
    if (fn.cwiseAbs().maxCoeff() >= f.cwiseAbs().maxCoeff()) break;
    x = next;
    f = fn;
  }

  out.lambda_c1 = x(0);
  out.lambda_c2 = x(0);
  out.lambda_bs = x(1);
  out.iterations = it;

  const auto u = unavailabilities(chain_pi(x(0), x(1), in));
  out.residual = std::max({std::abs(u[0] - (1.0 - in.a_c1)), std::abs(u[1] - (1.0 - in.a_c2)),
                           std::abs(u[2] - (1.0 - in.a_bs))});
  if (out.residual > kCalibrationTolerance)
    throw InfeasibleError("calibrated chain misses the target availabilities by " +
                              std::to_string(out.residual),
                          "marginal availabilities");
  return out;
}

double two_state_failure_rate(double availability, double restoration_rate) {
  check_availability(availability, "availability");
  check_rate(restoration_rate, "restoration_rate");
  return restoration_rate * (1.0 - availability) / availability;
}

}  // namespace latrel
