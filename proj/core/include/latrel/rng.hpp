#pragma once

#include <cstdint>
#include <random>

namespace latrel {

/// Seedable random stream.  Engine output is fixed by the standard; the
/// uniform, exponential and normal transforms are implemented here so that
/// sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream derived from a master seed and a stream index.
  static Rng derive(std::uint64_t master_seed, std::uint64_t stream);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

  /// Exponential with the given rate (> 0).
  double exponential(double rate);

  /// Standard normal (Marsaglia polar method).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finaliser; used to derive well-separated stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace latrel
