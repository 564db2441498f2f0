#include "latrel/gamma_optimizer.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "latrel/error.hpp"

namespace latrel {
namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0, 1]", "gamma");
}

// Absolute error target for the E[max] integral, in ms.
constexpr double kQuadratureTolerance = 1e-9;

// Boost's adaptive rule works to a relative tolerance, which never
// converges on panels where the integrand is roundoff-level small.  Accept
// the single-pass estimate when its error is already below the absolute
// target and only refine otherwise.
template <class F>
double integrate_panel(F f, double a, double b) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0;
  const double coarse = Rule::integrate(f, a, b, 0, 0.0, &err);
  if (err <= kQuadratureTolerance) return coarse;
  const double rel = std::max(kQuadratureTolerance / std::max(std::abs(coarse), 1e-300), 1e-13);
  return Rule::integrate(f, a, b, 12, rel, &err);
}

// Golden ratio conjugate (sqrt(5) - 1) / 2.
constexpr double kInvPhi = 0.6180339887498949;

}  // namespace

double fmax_cdf(const InterfaceProfile& first, const InterfaceProfile& second, double x_ms,
                double payload_bytes, double gamma) {
  check_gamma(gamma);
  return normalized_cdf(first, x_ms, gamma * payload_bytes) *
         normalized_cdf(second, x_ms, (1.0 - gamma) * payload_bytes);
}

double expected_max_latency(const InterfaceProfile& first, const InterfaceProfile& second,
                            double payload_bytes, double gamma) {
  check_gamma(gamma);
  const double b2 = gamma * payload_bytes;
  const double b3 = (1.0 - gamma) * payload_bytes;
  const double mu2 = mean_latency(first, b2);
  const double mu3 = mean_latency(second, b3);
  const double sd2 = latency_stddev(first, b2);
  const double sd3 = latency_stddev(second, b3);
  const double upper = std::max(mu2, mu3) + 12.0 * std::max(sd2, sd3);

  auto survival = [&](double x) {
    return 1.0 - normalized_cdf(first, x, b2) * normalized_cdf(second, x, b3);
  };

  // Panel edges at mean +- 6 sigma of each variable: every panel is either
  // smooth on the scale of its width or essentially flat, which keeps the
  // adaptive rule shallow even for near-degenerate latencies.
  std::vector<double> cuts{0.0, upper};
  for (double m : {mu2, mu3})
    for (double s : {-6.0, 6.0}) {
      const double sd = m == mu2 ? sd2 : sd3;
      cuts.push_back(std::clamp(m + s * sd, 0.0, upper));
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_panel(survival, cuts[i], cuts[i + 1]);
  return total;
}

GammaResult optimize_gamma(const InterfaceProfile& first, const InterfaceProfile& second,
                           double payload_bytes) {
  if (!(payload_bytes > 0.0)) throw ValidationError("payload must be > 0", "payload_bytes");
  validate(first);
  validate(second);

  GammaResult result;
  auto objective = [&](double g) {
    ++result.evaluations;
    return expected_max_latency(first, second, payload_bytes, g);
  };

  result.scan.reserve(kGammaScanSteps + 1);
  for (int i = 0; i <= kGammaScanSteps; ++i) {
    const double g = static_cast<double>(i) / kGammaScanSteps;
    result.scan.push_back({g, objective(g)});
  }

  // Best scan point; equal values resolved toward gamma = 0.5.
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.scan.size(); ++i) {
    const auto& cand = result.scan[i];
    const auto& cur = result.scan[best];
    const double tie = 1e-12 * std::max(1.0, std::abs(cur.expected_max_ms));
    if (cand.expected_max_ms < cur.expected_max_ms - tie ||
        (std::abs(cand.expected_max_ms - cur.expected_max_ms) <= tie &&
         std::abs(cand.gamma - 0.5) < std::abs(cur.gamma - 0.5)))
      best = i;
  }

  double lo = result.scan[best == 0 ? 0 : best - 1].gamma;
  double hi = result.scan[std::min(best + 1, result.scan.size() - 1)].gamma;

  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);
  while (hi - lo > kGammaTolerance) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = objective(d);
    }
  }

  double gamma = 0.5 * (lo + hi);
  double value = objective(gamma);
  // Never return something worse than the scan minimum; this also lands
  // boundary minima exactly on 0 or 1.
  const auto& scan_best = result.scan[best];
  if (scan_best.expected_max_ms <= value) {
    gamma = scan_best.gamma;
    value = scan_best.expected_max_ms;
  }
  result.gamma_opt = gamma;
  result.expected_max_latency = value;
  return result;
}

double split_benefit_threshold(const InterfaceProfile& fast, const InterfaceProfile& slow) {
  if (!(fast.alpha > 0.0))
    return slow.beta > fast.beta ? std::numeric_limits<double>::infinity() : 0.0;
  return std::max(0.0, (slow.beta - fast.beta) / fast.alpha);
}

}  // namespace latrel
