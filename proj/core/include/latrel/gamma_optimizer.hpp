#pragma once

#include <vector>

#include "latrel/latency_profile.hpp"

namespace latrel {

/// P(max(X2, X3) <= x) with gamma * B bytes on the first profile and
/// (1 - gamma) * B on the second.  Availability is factored out.
double fmax_cdf(const InterfaceProfile& first, const InterfaceProfile& second, double x_ms,
                double payload_bytes, double gamma);

/// E[max(X2, X3)] as the integral of the survival function 1 - F_max over
/// [0, U], U = larger mean + 12 * larger sigma.
double expected_max_latency(const InterfaceProfile& first, const InterfaceProfile& second,
                            double payload_bytes, double gamma);

struct GammaScanPoint {
  double gamma;
  double expected_max_ms;
};

struct GammaResult {
  double gamma_opt = 0.5;
  double expected_max_latency = 0.0;
  int evaluations = 0;
  std::vector<GammaScanPoint> scan;  // coarse scan, gamma = 0, 0.01, ..., 1
};

inline constexpr int kGammaScanSteps = 100;
inline constexpr double kGammaTolerance = 1e-5;

/// Coarse scan over gamma followed by golden-section refinement of the
/// bracketing interval.  Ties go to the gamma closest to 0.5.
GammaResult optimize_gamma(const InterfaceProfile& first, const InterfaceProfile& second,
                           double payload_bytes);

/// Payload above which splitting onto the slower interface can pay off: the
/// size at which the fast interface's mean latency reaches the slow one's
/// zero-payload mean, (beta_slow - beta_fast) / alpha_fast bytes.
double split_benefit_threshold(const InterfaceProfile& fast, const InterfaceProfile& slow);

}  // namespace latrel
