#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "irrigation/geometry.hpp"
#include "irrigation/theory.hpp"

namespace irr {
namespace {

TEST(PenroseRadius, ClosedForm) {
  EXPECT_NEAR(penrose_radius(21, 1), 0.0724886, 1e-7);
  EXPECT_NEAR(penrose_radius(10000, 2), 0.0171223, 1e-7);
  EXPECT_THROW(penrose_radius(2, 2), std::invalid_argument);
}

TEST(PenroseRadius, ExpectedDegreeIdentity) {
  for (int d = 1; d <= 4; ++d) {
    for (std::size_t n : {3u, 100u, 12345u, 1000000u}) {
      const double r = penrose_radius(n, d);
      EXPECT_NEAR(n * ball_volume(d) * std::pow(r, d), std::log(static_cast<double>(n)), 1e-12 * std::log(n));
    }
  }
}

TEST(Cstar, ClosedForm) {
  EXPECT_NEAR(cstar(1e6), 3.243906, 1e-6);
  EXPECT_NEAR(cstar(16), 2.331869, 1e-6);
  EXPECT_THROW(cstar(2), std::invalid_argument);
}

TEST(Cstar, IncreasingInN) {
  double previous = cstar(16);
  for (double n = 32; n < 1e15; n *= 2) {
    const double v = cstar(n);
    EXPECT_GT(v, previous);
    previous = v;
  }
}

TEST(FOf, ClosedForm) {
  EXPECT_EQ(f_of(0.2, 0.1), 19);
  EXPECT_EQ(f_of(0.01, 0.1), 15);
  EXPECT_EQ(f_of(0.19, 0.1), 17);
  EXPECT_THROW(f_of(0.5, 0.1), std::domain_error);
  EXPECT_THROW(f_of(0.45, 0.1), std::domain_error);
}

TEST(FOf, SmallArgumentScaling) {
  const double limit = std::sqrt(1.1);
  const double expected[] = {1.2017, 1.0900, 1.0625};
  const double xs[] = {1e-3, 1e-4, 1e-5};
  for (int i = 0; i < 3; ++i) {
    const double scaled = f_of(xs[i], 0.1) * std::sqrt(xs[i]);
    EXPECT_NEAR(scaled, expected[i], 5e-4);
    EXPECT_GE(scaled, 0.9 * limit);
    EXPECT_LE(scaled, 1.15 * limit);
  }
  // The approach is monotone from above along this sequence.
  EXPECT_GT(f_of(1e-3, 0.1) * std::sqrt(1e-3), f_of(1e-5, 0.1) * std::sqrt(1e-5));
  EXPECT_NEAR(f_of(1e-8, 0.1) * std::sqrt(1e-8), limit, 0.01 * limit);
}

TEST(BudgetPlan, PlaneValues) {
  const auto plan = budget_plan({.delta = 0.5, .eps = 0.1, .d = 2});
  EXPECT_EQ(plan.k1, 19);
  EXPECT_EQ(plan.k2, 246);
  EXPECT_EQ(plan.k3, 16);
  EXPECT_EQ(plan.c_total, 282);
  EXPECT_DOUBLE_EQ(plan.alpha_d, 0.05625);
  EXPECT_NEAR(plan.p_d, 0.0162772, 1e-7);
  EXPECT_NEAR(plan.eta_d, 7.762e-8, 1e-11);
  EXPECT_EQ(plan.budgets(), (std::vector<int>{19, 246, 16, 1}));
}

TEST(BudgetPlan, LineAndSpaceValues) {
  const auto line = budget_plan({.delta = 0.5, .eps = 0.1, .d = 1});
  EXPECT_EQ(line.k1, 19);
  EXPECT_EQ(line.k2, 40);
  EXPECT_EQ(line.k3, 7);
  EXPECT_EQ(line.c_total, 67);
  EXPECT_DOUBLE_EQ(line.alpha_d, 0.225);
  const auto space = budget_plan({.delta = 0.5, .eps = 0.1, .d = 3});
  EXPECT_EQ(space.k2, 1703);
  EXPECT_EQ(space.k3, 42);
  EXPECT_EQ(space.c_total, 1765);
}

TEST(BudgetPlan, RegimeBoundaryOnlyMovesK1) {
  const auto below = budget_plan({.delta = 0.19, .eps = 0.1, .d = 2});
  const auto above = budget_plan({.delta = 0.21, .eps = 0.1, .d = 2});
  EXPECT_EQ(below.k2, above.k2);
  EXPECT_EQ(below.k3, above.k3);
  EXPECT_EQ(below.alpha_d, above.alpha_d);
  EXPECT_EQ(below.k1, 17);
  EXPECT_EQ(above.k1, 19);
  EXPECT_EQ(budget_plan({.delta = 0.9, .eps = 0.1, .d = 2}).k1, 19);
}

TEST(BudgetPlan, ConstantsGrowWithEps) {
  int previous_k2 = 0;
  int previous_k3 = 0;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto plan = budget_plan({.delta = 0.5, .eps = eps, .d = 2});
    EXPECT_GE(plan.k2, previous_k2);
    EXPECT_GE(plan.k3, previous_k3);
    EXPECT_EQ(plan.c_total, plan.k1 + plan.k2 + plan.k3 + 1);
    previous_k2 = plan.k2;
    previous_k3 = plan.k3;
  }
}

TEST(BudgetPlan, UpperBoundSandwich) {
  // For small delta the budget keeps the order delta^{-1/2} from both sides.
  const double delta = 0.01;
  const auto plan = budget_plan({.delta = delta, .eps = 0.1, .d = 2});
  EXPECT_GE(plan.k1, 0.9 / std::sqrt(delta));
  EXPECT_LE(plan.k1, std::sqrt(1.1 / delta) + 5);
}

TEST(TheoryParams, Validation) {
  EXPECT_THROW(TheoryParams{.delta = 0.0}.validate(), std::invalid_argument);
  EXPECT_THROW(TheoryParams{.delta = 1.0}.validate(), std::invalid_argument);
  EXPECT_THROW(TheoryParams{.eps = 1.0}.validate(), std::invalid_argument);
  EXPECT_THROW(TheoryParams{.d = 0}.validate(), std::invalid_argument);
  EXPECT_THROW(TheoryParams{.gamma = 0.0}.validate(), std::invalid_argument);
  EXPECT_NO_THROW(TheoryParams{}.validate());
}

TEST(LowerBoundC, PolynomialRadiusLimit) {
  const double n = 1e12;
  const double r = std::pow(n, -0.75);  // n r = n^{1/4}
  const auto limit = lower_bound_c(n, r, 1, 0.1, std::numeric_limits<double>::infinity());
  ASSERT_TRUE(limit);
  EXPECT_NEAR(*limit, std::sqrt(0.9 / 0.25), 0.05 * 1.897);
  EXPECT_NEAR(*limit, 1.897367, 1e-6);
  const auto finite = lower_bound_c(n, r, 1, 0.1);
  ASSERT_TRUE(finite);
  EXPECT_NEAR(*finite, 2.17676, 1e-5);
}

TEST(LowerBoundC, LambdaFactor) {
  const double n = 1e6;
  const double r = 0.01;
  const auto at_one = lower_bound_c(n, r, 2, 0.1, 1.0);
  const auto at_inf = lower_bound_c(n, r, 2, 0.1, std::numeric_limits<double>::infinity());
  EXPECT_NEAR(*at_one, std::sqrt(2.0) * *at_inf, 1e-12);
  EXPECT_FALSE(lower_bound_c(n, r, 2, 0.1, 0.5).has_value());
  EXPECT_FALSE(lower_bound_c(n, r, 2, 0.1, 0.3).has_value());
  EXPECT_THROW(lower_bound_c(100, 0.05, 2, 0.1), std::domain_error);
}

TEST(RadiusFromDelta, Values) {
  EXPECT_NEAR(radius_from_delta(1e4, 2, 0.5, 1.0), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(radius_from_delta(1e4, 2, 1.0, 1.0), 1.0);
  EXPECT_NEAR(radius_from_delta(1e4, 2, 0.5, 3.0), 0.3, 1e-14);
  double previous = 0.0;
  for (double delta = 0.05; delta < 1.0; delta += 0.05) {
    const double r = radius_from_delta(1e5, 3, delta, 1.0);
    EXPECT_GT(r, previous);
    previous = r;
  }
}

TEST(GrowthConstants, DepthAndTarget) {
  EXPECT_DOUBLE_EQ(growth_exponent(0.5), 0.04);
  EXPECT_DOUBLE_EQ(growth_exponent(0.1), 0.01);
  EXPECT_EQ(exploration_depth(2e4, 0.5), 0);
  EXPECT_EQ(exploration_depth(1e9, 0.5), 1);
  EXPECT_EQ(exploration_depth(std::pow(2.0, 100), 0.5), 4);
  EXPECT_NEAR(dense_cell_target(1e6, 0.5), std::pow(1e6, 0.04 / 3), 1e-12);
}

TEST(Regularity, ClusteredPointsFail) {
  Eigen::MatrixXd coords(2, 500);
  for (int i = 0; i < 500; ++i) {
    coords(0, i) = 0.5 + 1e-4 * (i % 10);
    coords(1, i) = 0.5 + 1e-4 * (i / 10 % 10);
  }
  const auto report = check_regularity(PointSet(coords, 0), 0.05, 0.5);
  EXPECT_FALSE(report.holds);
  EXPECT_DOUBLE_EQ(report.ball_ratio_min, 0.0);
  EXPECT_TRUE(report.discretized);
  EXPECT_EQ(report.centers_checked, 500u + static_cast<std::size_t>(grid_for_radius(0.05, 2).cell_count()));
}

TEST(Regularity, MeanBallRatioIsUnbiased) {
  const std::size_t n = 100000;
  const double r = radius_from_delta(n, 2, 0.5, 1.0);
  const auto report = check_regularity(sample_points(n, 2, 11), r, 0.5);
  EXPECT_GT(report.ball_ratio_mean, 0.99);
  EXPECT_LT(report.ball_ratio_mean, 1.01);
  EXPECT_LE(report.ball_ratio_min, 1.0);
  EXPECT_GE(report.ball_ratio_max, 1.0);
}

TEST(Regularity, DenseRegimeHolds) {
  // Large cube expectations keep every ratio close to one.
  const auto report = check_regularity(sample_points(20000, 2, 3), 0.35, 0.4);
  EXPECT_TRUE(report.holds);
  EXPECT_GT(report.cube_ratio_min, 0.6);
  EXPECT_LT(report.cube_ratio_max, 1.4);
}

TEST(Regularity, MonotoneInEps) {
  const auto pts = sample_points(20000, 2, 5);
  bool previous = false;
  for (double eps : {0.05, 0.2, 0.5, 0.9, 0.99}) {
    const auto report = check_regularity(pts, 0.2, eps);
    if (previous) EXPECT_TRUE(report.holds);
    previous = report.holds;
  }
  EXPECT_TRUE(previous);
}

}  // namespace
}  // namespace irr
