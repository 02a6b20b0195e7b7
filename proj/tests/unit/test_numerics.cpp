#include <cmath>

#include <gtest/gtest.h>

#include "giantscope/numerics.hpp"
#include "giantscope/skorohod.hpp"
#include "giantscope/trajectory.hpp"

namespace gs = giantscope;
namespace nm = giantscope::numerics;

TEST(Numerics, SeriesBranchesJoinTheDirectFormulas) {
  for (double y : {0.2499999, 0.25, 0.2500001}) {
    EXPECT_NEAR(nm::log_sinhc(y), std::log(std::sinh(y) / y), 1e-15);
    EXPECT_NEAR(nm::ycoth_minus_one(y), y / std::tanh(y) - 1.0, 1e-15);
    EXPECT_NEAR(nm::coth_minus_inverse(y), 1.0 / std::tanh(y) - 1.0 / y, 1e-14);
    const double s = std::sinh(y);
    EXPECT_NEAR(nm::ycoth_minus_one_derivative(y), 1.0 / std::tanh(y) - y / (s * s), 1e-14);
  }
}

TEST(Numerics, SmallArgumentLimits) {
  EXPECT_EQ(nm::log_sinhc(0.0), 0.0);
  EXPECT_EQ(nm::ycoth_minus_one(0.0), 0.0);
  EXPECT_NEAR(nm::ycoth_minus_one(1e-4) / 1e-8, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(nm::coth_minus_inverse(1e-5) / 1e-5, 1.0 / 3.0, 1e-9);
  EXPECT_EQ(nm::x_over_one_minus_exp(0.0), 1.0);
  EXPECT_EQ(nm::x_over_exp_minus_one(0.0), 1.0);
  EXPECT_NEAR(nm::x_over_one_minus_exp(2.0), 2.0 / (1.0 - std::exp(-2.0)), 1e-15);
}

TEST(Numerics, LogSinhcLargeArgument) {
  EXPECT_NEAR(nm::log_sinhc(30.0), 30.0 - std::log(60.0), 1e-12);
  EXPECT_TRUE(std::isfinite(nm::log_sinhc(1e4)));
}

TEST(Numerics, EntropyTermConventions) {
  EXPECT_EQ(nm::entropy_term(0.0, 0.0), 0.0);
  EXPECT_EQ(nm::entropy_term(0.0, 2.0), 2.0);
  EXPECT_EQ(nm::entropy_term(1.0, 0.0), gs::kInfinity);
  EXPECT_EQ(nm::entropy_term(-1.0, 1.0), gs::kInfinity);
  EXPECT_EQ(nm::entropy_term(3.0, 3.0), 0.0);
}

TEST(Numerics, BisectNewtonFindsRoot) {
  const double r = nm::bisect_newton([](double x) { return x * x - 2.0; },
                                     [](double x) { return 2.0 * x; }, 0.0, 2.0);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-15);
  EXPECT_THROW(nm::bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), gs::NumericalError);
}

TEST(Numerics, GreatestRootBracket) {
  const auto f = [](double x) { return std::sin(10.0 * x); };
  const auto br = nm::bracket_greatest_root(f, 0.05, 1.0, 1000);
  ASSERT_TRUE(br.has_value());
  EXPECT_LE(br->first, 3.0 * M_PI / 10.0);
  EXPECT_GE(br->second, 3.0 * M_PI / 10.0);
  EXPECT_FALSE(nm::bracket_greatest_root([](double) { return 1.0; }, 0.0, 1.0, 10));
}

TEST(Numerics, MaximizersAgree) {
  const auto f = [](double x) { return -(x - 0.3) * (x - 0.3) + 1.0; };
  EXPECT_NEAR(nm::maximize_scan(f, 0.0, 1.0, 64).x, 0.3, 1e-7);
  EXPECT_NEAR(nm::maximize_unimodal(f, 0.0, 1.0).x, 0.3, 1e-7);
  const auto m = nm::minimize_scan([](double x) { return std::cos(x); }, 0.0, 6.0, 100);
  EXPECT_NEAR(m.x, M_PI, 1e-7);
  EXPECT_NEAR(m.value, -1.0, 1e-14);
}

TEST(Numerics, CompensatedSumRecoversSmallTerms) {
  nm::CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}

TEST(Skorohod, ReflectionDefinition) {
  const std::vector<double> x{0.0, -1.0, 0.5, -2.0, 1.0};
  const auto r = gs::skorohod(x);
  const std::vector<double> reflected{0.0, 0.0, 1.5, 0.0, 3.0};
  const std::vector<double> regulator{0.0, 1.0, 1.0, 2.0, 2.0};
  EXPECT_EQ(r.reflected, reflected);
  EXPECT_EQ(r.regulator, regulator);
  EXPECT_THROW(gs::skorohod(std::vector<double>{}), std::invalid_argument);
}

TEST(Skorohod, RegulatorGrowsOnlyAtZero) {
  const auto path = gs::Trajectory::sample(0.0, 1.0, 500, [](double t) {
    return std::sin(12.0 * t) - 2.0 * t;
  });
  const auto r = gs::skorohod(path);
  for (std::size_t k = 1; k < path.size(); ++k) {
    EXPECT_GE(r.reflected[k], 0.0);
    EXPECT_GE(r.regulator[k], r.regulator[k - 1]);
    if (r.regulator[k] > r.regulator[k - 1]) {
      EXPECT_EQ(r.reflected[k], 0.0);
    }
    EXPECT_NEAR(r.reflected[k] - r.regulator[k], path[k], 1e-15);
  }
}

TEST(Trajectory, TrapezoidIntegral) {
  const auto p = gs::Trajectory::sample(0.0, 2.0, 4, [](double t) { return t; });
  EXPECT_DOUBLE_EQ(p.integral(), 2.0);
  EXPECT_DOUBLE_EQ(p.slope(2), 1.0);
  EXPECT_EQ(p.time(4), 2.0);
  EXPECT_THROW(gs::Trajectory::sample(0.0, 1.0, 0, [](double) { return 0.0; }),
               std::invalid_argument);
}
