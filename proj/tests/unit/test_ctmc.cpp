#include <gtest/gtest.h>

#include <random>

#include "latrel/ctmc.hpp"
#include "latrel/error.hpp"

namespace latrel {
namespace {

using enum InterfaceId;

ComponentSpec spec(std::string name, double lambda, double mu) {
  return {std::move(name), lambda, mu};
}

CtmcModel case_study_model() {
  return build_three_interface_model(spec("fiber", 0.0561122244488978, 28.0),
                                     spec("C1", 1.0028571428571, 50.4),
                                     spec("C2", 1.0028571428571, 50.4),
                                     spec("BS", 0.0262259475218659, 50.4));
}

TEST(InterfaceSet, Formatting) {
  EXPECT_EQ((InterfaceSet{fiber, c1, c2}).to_string(), "fiber|C1|C2");
  EXPECT_EQ((InterfaceSet{c2}).to_string(), "C2");
  EXPECT_EQ(InterfaceSet{}.to_string(), "-");
  EXPECT_EQ((InterfaceSet{c1, c2}).size(), 2u);
}

TEST(RateConversions, WeeksMinutesHours) {
  EXPECT_DOUBLE_EQ(per_week_from_minutes(200.0), 50.4);
  EXPECT_DOUBLE_EQ(per_week_from_hours(6.0), 28.0);
  EXPECT_DOUBLE_EQ(component_availability(spec("x", 1.0, 9.0)), 0.9);
}

TEST(ComponentSpec, Validation) {
  EXPECT_THROW(validate(spec("x", -1.0, 1.0)), ValidationError);
  EXPECT_THROW(validate(spec("x", 1.0, 0.0)), ValidationError);
  EXPECT_NO_THROW(validate(spec("x", 0.0, 1.0)));
}

TEST(ThreeInterfaceModel, StateOrderingAndUsability) {
  const auto m = case_study_model();
  ASSERT_EQ(m.size(), 16u);
  EXPECT_EQ(m.state(0).label, "s1");
  EXPECT_EQ(m.state(0).component_status, "fiber=up;C1=up;C2=up;BS=up");
  EXPECT_EQ(m.available_interfaces(0), (InterfaceSet{fiber, c1, c2}));
  // Single failures in component order.
  EXPECT_EQ(m.available_interfaces(1), (InterfaceSet{c1, c2}));
  EXPECT_EQ(m.available_interfaces(2), (InterfaceSet{fiber, c2}));
  EXPECT_EQ(m.available_interfaces(3), (InterfaceSet{fiber, c1}));
  EXPECT_EQ(m.state(4).component_status, "fiber=up;C1=up;C2=up;BS=down");
  EXPECT_EQ(m.available_interfaces(4), (InterfaceSet{fiber}));
  EXPECT_EQ(m.state(15).component_status, "fiber=down;C1=down;C2=down;BS=down");
  EXPECT_TRUE(m.available_interfaces(15).empty());
  EXPECT_THROW(m.available_interfaces(16), std::out_of_range);
}

TEST(ThreeInterfaceModel, GeneratorRowsSumToZero) {
  const auto m = case_study_model();
  for (Eigen::Index i = 0; i < m.generator().rows(); ++i) {
    EXPECT_NEAR(m.generator().row(i).sum(), 0.0, 1e-12);
    EXPECT_GT(m.exit_rate(static_cast<std::size_t>(i)), 0.0);
  }
}

TEST(CellularSubsystem, StatesAndUsability) {
  const auto m = build_cellular_subsystem(spec("C1", 1.0, 50.4), spec("C2", 1.0, 50.4),
                                          spec("BS", 0.03, 50.4));
  ASSERT_EQ(m.size(), 5u);
  EXPECT_EQ(m.available_interfaces(0), (InterfaceSet{c1, c2}));
  EXPECT_EQ(m.available_interfaces(1), (InterfaceSet{c2}));
  EXPECT_EQ(m.available_interfaces(2), (InterfaceSet{c1}));
  EXPECT_TRUE(m.available_interfaces(3).empty());
  EXPECT_TRUE(m.available_interfaces(4).empty());
  EXPECT_EQ(m.state(4).component_status, "C1=up;C2=up;BS=down");
}

TEST(SteadyState, TwoStateAvailability) {
  const auto m = build_two_state_model(spec("fiber", 0.0561122244488978, 28.0));
  const auto ss = steady_state(m);
  EXPECT_NEAR(ss.pi[0], 0.998, 1e-12);
  EXPECT_LE(ss.residual, kSteadyStateResidualLimit);
}

TEST(SteadyState, ProductFormMatchesIndependentAvailabilities) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> lam(0.0, 5.0), mu(1.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    ComponentSpec parts[4] = {spec("fiber", lam(gen), mu(gen)), spec("C1", lam(gen), mu(gen)),
                              spec("C2", lam(gen), mu(gen)), spec("BS", lam(gen), mu(gen))};
    const auto m = build_three_interface_model(parts[0], parts[1], parts[2], parts[3]);
    const auto ss = steady_state(m);
    double total = 0.0;
    for (std::size_t s = 0; s < m.size(); ++s) {
      // Reconstruct the up/down vector from the status string.
      const auto& st = m.state(s).component_status;
      double expected = 1.0;
      for (const auto& c : parts) {
        const bool up = st.find(c.name + "=up") != std::string::npos;
        const double a = component_availability(c);
        expected *= up ? a : 1.0 - a;
      }
      ASSERT_NEAR(ss.pi[s], expected, 1e-10);
      total += ss.pi[s];
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(SteadyState, AllFailureRatesZeroStaysUp) {
  const auto m = build_three_interface_model(spec("fiber", 0, 1), spec("C1", 0, 1),
                                             spec("C2", 0, 1), spec("BS", 0, 1));
  const auto ss = steady_state(m);
  EXPECT_NEAR(ss.pi[0], 1.0, 1e-14);
  for (std::size_t s = 1; s < m.size(); ++s) EXPECT_NEAR(ss.pi[s], 0.0, 1e-14);
}

TEST(SteadyState, SymmetricCellularLinksGetEqualMass) {
  const auto m = build_cellular_subsystem(spec("C1", 1.3, 40.0), spec("C2", 1.3, 40.0),
                                          spec("BS", 0.1, 20.0));
  const auto ss = steady_state(m);
  EXPECT_NEAR(ss.pi[1], ss.pi[2], 1e-14);
}

TEST(SteadyState, CaseStudyAllDownProbability) {
  const auto m = case_study_model();
  const auto ss = steady_state(m);
  const double none = probability_where(m, ss, [](InterfaceSet s) { return s.empty(); });
  // (1 - 0.998) * (1 - 0.9995 * (1 - 0.0195...^2)) is about 1.8e-6.
  EXPECT_NEAR(none, 1.8e-6, 0.1e-6);
  const double fiber_up =
      probability_where(m, ss, [](InterfaceSet s) { return s.contains(InterfaceId::fiber); });
  EXPECT_NEAR(fiber_up, 0.998, 1e-12);
}

TEST(CtmcModel, RejectsReducibleGenerator) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(3, 3);
  q(0, 1) = 1.0;
  q(0, 2) = 1.0;  // states 1 and 2 are both absorbing
  std::vector<StateInfo> states{{"s1", "", {}}, {"s2", "", {}}, {"s3", "", {}}};
  try {
    CtmcModel m({"x"}, states, q);
    FAIL() << "expected ReducibleChainError";
  } catch (const ReducibleChainError& e) {
    EXPECT_EQ(e.closed_classes().size(), 2u);
  }
}

TEST(CtmcModel, RejectsNegativeOffDiagonal) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
  q(0, 1) = -1.0;
  q(1, 0) = 1.0;
  std::vector<StateInfo> states{{"s1", "", {}}, {"s2", "", {}}};
  EXPECT_THROW(CtmcModel({"x"}, states, q), ValidationError);
}

}  // namespace
}  // namespace latrel
