#include "latrel/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "latrel/error.hpp"

namespace latrel {
namespace {

void check_probability(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(std::string(field) + " must lie in [0, 1]", field);
}

void check_list(std::span<const double> values) {
  if (values.empty()) throw ValidationError("value list must not be empty", "values");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] >= 0.0 && values[i] <= 1.0))
      throw ValidationError("value " + std::to_string(i) + " must lie in [0, 1]",
                            "values", i);
}

}  // namespace

double parallel_independent(std::span<const double> values) {
  check_list(values);
  double miss = 1.0;
  for (double f : values) miss *= 1.0 - f;
  return std::clamp(1.0 - miss, 0.0, 1.0);
}

double first_arrival_cdf(std::span<const double> values) {
  return parallel_independent(values);
}

double last_arrival_cdf(std::span<const double> values) {
  check_list(values);
  double all = 1.0;
  for (double f : values) all *= f;
  return all;
}

double two_of_three_cdf(double f1, double f2, double f3) {
  check_probability(f1, "f1");
  check_probability(f2, "f2");
  check_probability(f3, "f3");
  const double all = f1 * f2 * f3;
  const double miss3 = f1 * f2 * (1.0 - f3);
  const double miss2 = f1 * (1.0 - f2) * f3;
  const double miss1 = (1.0 - f1) * f2 * f3;
  return std::clamp(all + miss3 + miss2 + miss1, 0.0, 1.0);
}

double k_of_n_identical(double f, int k, int n) {
  check_probability(f, "f");
  if (n < 1) throw ValidationError("n must be >= 1", "n");
  if (k < 1 || k > n) throw ValidationError("k must satisfy 1 <= k <= n", "k");
  double total = 0.0;
  double binom = 1.0;  // C(n, j), built incrementally from j = 0
  for (int j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    if (j >= k) total += binom * std::pow(f, j) * std::pow(1.0 - f, n - j);
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace latrel
