#pragma once

#include <initializer_list>
#include <span>

// Combinators over scalar reliability values, i.e. latency-reliability
// functions evaluated at one deadline.  Inputs are probabilities in [0, 1]
// of independent events; every combinator throws ValidationError on values
// outside that interval.

namespace latrel {

/// 1 - prod(1 - F_i): at least one of several independent parallel
/// transmissions arrives in time.
double parallel_independent(std::span<const double> values);

/// CDF of the minimum of independent latencies.  Same formula as
/// parallel_independent.
double first_arrival_cdf(std::span<const double> values);

/// CDF of the maximum of independent latencies: prod(F_i).
double last_arrival_cdf(std::span<const double> values);

inline double first_arrival_cdf(std::initializer_list<double> values) {
  return first_arrival_cdf(std::span<const double>(values.begin(), values.size()));
}
inline double last_arrival_cdf(std::initializer_list<double> values) {
  return last_arrival_cdf(std::span<const double>(values.begin(), values.size()));
}
inline double parallel_independent(std::initializer_list<double> values) {
  return parallel_independent(std::span<const double>(values.begin(), values.size()));
}

/// Probability that at least two of three independent fragments arrive:
/// f1 f2 f3 + f1 f2 (1-f3) + f1 (1-f2) f3 + (1-f1) f2 f3.
double two_of_three_cdf(double f1, double f2, double f3);

/// Binomial tail sum_{j=k..n} C(n,j) f^j (1-f)^(n-j) for n identical
/// components.
double k_of_n_identical(double f, int k, int n);

}  // namespace latrel
