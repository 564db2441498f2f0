#include "latrel/latency_profile.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "latrel/error.hpp"
#include "latrel/normal.hpp"

namespace latrel {
namespace {

// Round-trip regression for cellular technologies (ms/byte, ms).  FIBER is
// not a measured technology; it is a fast wired path used by the case study.
constexpr std::array<LatencyPreset, 6> kPresets{{
    {"GPRS", 0.70, 400.0},
    {"EDGE", 0.46, 230.0},
    {"UMTS", 0.43, 200.0},
    {"HSDPA", 0.35, 178.0},
    {"LTE", 0.0067, 41.0},
    {"FIBER", 0.001, 20.0},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

void require_payload(double payload_bytes) {
  if (!(payload_bytes >= 0.0))
    throw ValidationError("payload must be non-negative", "payload_bytes");
}

void require_latency(double x_ms) {
  if (!(x_ms >= 0.0)) throw ValidationError("latency must be non-negative", "x_ms");
}

}  // namespace

void validate(const InterfaceProfile& p) {
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha))
    throw ValidationError("alpha must be finite and >= 0", "alpha");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta))
    throw ValidationError("beta must be finite and > 0", "beta");
  if (!(p.availability > 0.0 && p.availability <= 1.0))
    throw ValidationError("availability must lie in (0, 1]", "availability");
  if (!(p.sigma_ratio > 0.0) || !std::isfinite(p.sigma_ratio))
    throw ValidationError("sigma_ratio must be > 0", "sigma_ratio");
}

InterfaceProfile make_profile(std::string id, double alpha, double beta,
                              double availability, double sigma_ratio) {
  InterfaceProfile p{std::move(id), alpha, beta, availability, sigma_ratio};
  validate(p);
  return p;
}

std::span<const LatencyPreset> latency_presets() noexcept { return kPresets; }

std::optional<LatencyPreset> find_preset(std::string_view name) noexcept {
  for (const auto& preset : kPresets)
    if (iequals(preset.name, name)) return preset;
  return std::nullopt;
}

InterfaceProfile preset_profile(std::string_view name, double availability,
                                std::string id) {
  auto preset = find_preset(name);
  if (!preset)
    throw ValidationError("unknown latency preset '" + std::string(name) + "'",
                          "preset");
  return make_profile(id.empty() ? std::string(preset->name) : std::move(id),
                      preset->alpha, preset->beta, availability);
}

double mean_latency(const InterfaceProfile& profile, double payload_bytes) {
  require_payload(payload_bytes);
  return (profile.alpha * payload_bytes + profile.beta) / 2.0;
}

double latency_stddev(const InterfaceProfile& profile, double payload_bytes) {
  return profile.sigma_ratio * mean_latency(profile, payload_bytes);
}

double normalized_cdf(const InterfaceProfile& profile, double x_ms,
                      double payload_bytes) {
  require_latency(x_ms);
  const double mu = mean_latency(profile, payload_bytes);
  const double sigma = profile.sigma_ratio * mu;
  if (std::isinf(x_ms)) return 1.0;
  return standard_normal_cdf((x_ms - mu) / sigma);
}

double latency_reliability(const InterfaceProfile& profile, double x_ms,
                           double payload_bytes) {
  return profile.availability * normalized_cdf(profile, x_ms, payload_bytes);
}

LatencyCurve LatencyCurve::gaussian(InterfaceProfile profile) {
  validate(profile);
  const double ceiling = profile.availability;
  return LatencyCurve(
      [p = std::move(profile)](double x, double b) { return latency_reliability(p, x, b); },
      ceiling, {});
}

LatencyCurve LatencyCurve::empirical(std::vector<CurveSample> samples) {
  if (samples.empty()) throw ValidationError("empirical curve needs samples", "samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.x_ms) || !(s.reliability >= 0.0 && s.reliability <= 1.0))
      throw ValidationError("sample " + std::to_string(i) + " out of range", "samples", i);
    if (i == 0) continue;
    if (!(s.x_ms > samples[i - 1].x_ms))
      throw ValidationError("sample " + std::to_string(i) + " is not sorted by x",
                            "samples", i);
    if (s.reliability < samples[i - 1].reliability)
      throw ValidationError(
          "sample " + std::to_string(i) + " decreases the reliability", "samples", i);
  }
  const double ceiling = samples.back().reliability;
  auto table = samples;
  return LatencyCurve(
      [t = std::move(table)](double x, double) {
        if (x <= t.front().x_ms) return t.front().reliability;
        if (x >= t.back().x_ms) return t.back().reliability;
        auto hi = std::upper_bound(t.begin(), t.end(), x,
                                   [](double v, const CurveSample& s) { return v < s.x_ms; });
        auto lo = std::prev(hi);
        const double w = (x - lo->x_ms) / (hi->x_ms - lo->x_ms);
        return lo->reliability + w * (hi->reliability - lo->reliability);
      },
      ceiling, std::move(samples));
}

double LatencyCurve::operator()(double x_ms, double payload_bytes) const {
  require_latency(x_ms);
  return eval_(x_ms, payload_bytes);
}

LatencyCurve load_empirical_curve(std::vector<CurveSample> samples) {
  return LatencyCurve::empirical(std::move(samples));
}

}  // namespace latrel
