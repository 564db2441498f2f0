#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace latrel {

/// Latency model of one interface: Gaussian latency whose mean grows
/// linearly with payload, scaled by the interface availability.
///
/// Mean latency for a B-byte payload is (alpha * B + beta) / 2 ms (half the
/// measured round trip) and the standard deviation is sigma_ratio times the
/// mean.
struct InterfaceProfile {
  std::string id;
  double alpha = 0.0;         // ms per byte
  double beta = 1.0;          // ms
  double availability = 1.0;  // 1 - P_e
  double sigma_ratio = 0.1;
};

/// Throws ValidationError if any field is out of range.
void validate(const InterfaceProfile& profile);

/// Builds and validates a profile.
InterfaceProfile make_profile(std::string id, double alpha, double beta,
                              double availability, double sigma_ratio = 0.1);

/// Regression parameters for a named technology.  Recognised names are
/// GPRS, EDGE, UMTS, HSDPA, LTE (case-insensitive) and FIBER.
struct LatencyPreset {
  std::string_view name;
  double alpha;
  double beta;
};

std::span<const LatencyPreset> latency_presets() noexcept;
std::optional<LatencyPreset> find_preset(std::string_view name) noexcept;

/// Profile from a preset; throws ValidationError on unknown names.
InterfaceProfile preset_profile(std::string_view name, double availability,
                                std::string id = {});

double mean_latency(const InterfaceProfile& profile, double payload_bytes);
double latency_stddev(const InterfaceProfile& profile, double payload_bytes);

/// P(latency <= x) including the availability ceiling.
double latency_reliability(const InterfaceProfile& profile, double x_ms,
                           double payload_bytes);

/// Same as latency_reliability with the availability factored out; a proper
/// CDF in x.
double normalized_cdf(const InterfaceProfile& profile, double x_ms,
                      double payload_bytes);

struct CurveSample {
  double x_ms;
  double reliability;
};

/// A latency-reliability function: non-decreasing in x, bounded by its
/// ceiling.  Either parametric (Gaussian profile) or an interpolated table
/// of samples for one fixed payload size.
class LatencyCurve {
 public:
  using Evaluator = std::function<double(double x_ms, double payload_bytes)>;

  static LatencyCurve gaussian(InterfaceProfile profile);

  /// Piecewise-linear interpolation of measured samples, clamped outside
  /// the sampled range.  Samples must be sorted by x with non-decreasing
  /// reliabilities in [0, 1]; the payload argument is ignored.
  static LatencyCurve empirical(std::vector<CurveSample> samples);

  double operator()(double x_ms, double payload_bytes = 0.0) const;
  double ceiling() const noexcept { return ceiling_; }
  bool is_empirical() const noexcept { return !samples_.empty(); }

 private:
  LatencyCurve(Evaluator eval, double ceiling, std::vector<CurveSample> samples)
      : eval_(std::move(eval)), ceiling_(ceiling), samples_(std::move(samples)) {}

  Evaluator eval_;
  double ceiling_;
  std::vector<CurveSample> samples_;
};

/// Validating wrapper around LatencyCurve::empirical.
LatencyCurve load_empirical_curve(std::vector<CurveSample> samples);

}  // namespace latrel
