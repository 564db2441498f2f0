#include <gtest/gtest.h>

#include <random>

#include "latrel/calibration.hpp"
#include "latrel/error.hpp"
#include "oracles.hpp"

namespace latrel {
namespace {

constexpr double kMu = 50.4;

AvailabilityInputs table3() { return {0.98, 0.98, 0.9995, kMu, kMu, kMu}; }

TEST(AvailabilitySystem, CaseStudyProbabilities) {
  const auto pi = state_probabilities_from_availabilities(table3());
  const double expected[] = {0.961, 0.019, 0.019, 0.0005, 0.0005};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(pi[i], expected[i], 1e-12) << i;
}

TEST(AvailabilitySystem, UnequalCellularAvailabilitiesAreInfeasible) {
  try {
    state_probabilities_from_availabilities({0.98, 0.97, 0.9995, kMu, kMu, kMu});
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.constraint(), "pi2 = pi3");
  }
}

TEST(AvailabilitySystem, NegativeProbabilityNamesConstraint) {
  // 1 - A_C = 0.01 < 2 (1 - A_BS) = 0.02 forces pi2 < 0.
  try {
    state_probabilities_from_availabilities({0.99, 0.99, 0.99, kMu, kMu, kMu});
    FAIL() << "expected InfeasibleError";
  } catch (const InfeasibleError& e) {
    EXPECT_NE(e.constraint().find("pi2"), std::string::npos) << e.constraint();
  }
}

TEST(AvailabilityInputs, Validation) {
  EXPECT_THROW(validate(AvailabilityInputs{0.0, 0.98, 0.9995, kMu, kMu, kMu}), ValidationError);
  EXPECT_THROW(validate(AvailabilityInputs{0.98, 0.98, 0.9995, 0.0, kMu, kMu}), ValidationError);
  EXPECT_THROW(validate(AvailabilityInputs{0.999, 0.999, 0.99, kMu, kMu, kMu}), ValidationError);
}

TEST(BalanceFit, LeastSquaresSeedIsCloseButInexact) {
  const auto pi = state_probabilities_from_availabilities(table3());
  const auto fit = failure_rates_from_balance(pi, kMu, kMu, kMu);
  EXPECT_NEAR(fit.lambda_c1, fit.lambda_c2, 1e-12);
  EXPECT_NEAR(fit.lambda_c1, 0.9933, 5e-4);
  EXPECT_NEAR(fit.lambda_bs, 0.02935, 5e-5);
  EXPECT_NEAR(fit.mu_c1, kMu, 1e-5);
  EXPECT_GT(fit.residual, 1e-6);
}

TEST(BalanceFit, AllUpGivesZeroRates) {
  const auto fit = failure_rates_from_balance({1.0, 0.0, 0.0, 0.0, 0.0}, kMu, kMu, kMu);
  EXPECT_NEAR(fit.lambda_c1, 0.0, 1e-12);
  EXPECT_NEAR(fit.lambda_bs, 0.0, 1e-12);
}

TEST(Calibration, CaseStudyMatchesClosedForm) {
  const auto r = calibrate_cellular(table3());
  const auto exact = oracle::cellular_closed_form(0.98, 0.9995, kMu, kMu);
  EXPECT_NEAR(r.lambda_c1, exact.lambda_c, 1e-8);
  EXPECT_NEAR(r.lambda_c2, exact.lambda_c, 1e-8);
  EXPECT_NEAR(r.lambda_bs, exact.lambda_bs, 1e-9);
  EXPECT_NEAR(r.lambda_c1, 1.002857142857, 1e-8);
  EXPECT_NEAR(r.lambda_bs, 0.0262259475, 1e-9);
  EXPECT_LE(r.residual, kCalibrationTolerance);
}

TEST(Calibration, RoundTripOverRandomInputs) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> bs_down(1e-5, 5e-3), extra(0.0, 0.05), mu(1.0, 500.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double u_bs = bs_down(gen);
    const double u_c = 2.0 * u_bs + extra(gen);
    AvailabilityInputs in{1.0 - u_c, 1.0 - u_c, 1.0 - u_bs, mu(gen), 0.0, mu(gen)};
    in.mu_c2 = in.mu_c1;
    const auto r = calibrate_cellular(in);
    const auto model = build_cellular_subsystem(r.c1(), r.c2(), r.bs());
    const auto u = cellular_unavailabilities(model, steady_state(model));
    ASSERT_NEAR(u[0], u_c, 1e-9);
    ASSERT_NEAR(u[1], u_c, 1e-9);
    ASSERT_NEAR(u[2], u_bs, 1e-9);
    const auto exact = oracle::cellular_closed_form(in.a_c1, in.a_bs, in.mu_c1, in.mu_bs);
    ASSERT_NEAR(r.lambda_c1, exact.lambda_c, 1e-6 * std::max(1.0, exact.lambda_c));
    ASSERT_NEAR(r.lambda_bs, exact.lambda_bs, 1e-6 * std::max(1.0, exact.lambda_bs));
  }
}

TEST(Calibration, RatesScaleWithRestorationRates) {
  auto in = table3();
  const auto base = calibrate_cellular(in);
  in.mu_c1 = in.mu_c2 = in.mu_bs = 3.0 * kMu;
  const auto scaled = calibrate_cellular(in);
  EXPECT_NEAR(scaled.lambda_c1, 3.0 * base.lambda_c1, 1e-7);
  EXPECT_NEAR(scaled.lambda_bs, 3.0 * base.lambda_bs, 1e-8);
}

TEST(TwoStateFailureRate, FiberExample) {
  EXPECT_NEAR(two_state_failure_rate(0.998, 28.0), 0.0561122, 1e-7);
  EXPECT_DOUBLE_EQ(two_state_failure_rate(1.0, 28.0), 0.0);
  EXPECT_THROW(two_state_failure_rate(0.0, 28.0), ValidationError);
  EXPECT_THROW(two_state_failure_rate(0.9, -1.0), ValidationError);
}

}  // namespace
}  // namespace latrel
