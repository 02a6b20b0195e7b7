#include <cmath>

#include <gtest/gtest.h>

#include "giantscope/rates.hpp"

namespace gs = giantscope;

TEST(Phase, PointsAtThree) {
  const auto p = gs::phase_points(3.0);
  ASSERT_TRUE(p.a_tilde && p.a_hat && p.tau_tilde);
  EXPECT_NEAR(p.a_star, 0.514461284998445344, 1e-12);
  EXPECT_NEAR(*p.tau_tilde, 0.453593177449467435, 1e-11);
  EXPECT_NEAR(*p.a_tilde, 0.418176432781677639, 1e-11);
  EXPECT_NEAR(*p.a_hat, 0.512862432486677673, 1e-11);
  EXPECT_NEAR(gs::i_alpha_giant_branch(*p.a_hat, 3.0), gs::i_alpha_no_giant_branch(*p.a_hat, 3.0),
              1e-10);
  const double t = *p.tau_tilde;
  EXPECT_NEAR(std::exp(-3.0 * t) - 1.0 + 3.0 * t, 3.0 * t * t, 1e-12);
}

TEST(Phase, NoTransitionBelowTwo) {
  for (double c : {0.5, 1.0, 1.5, 2.0}) {
    const auto p = gs::phase_points(c);
    EXPECT_EQ(p.a_star, 0.5);
    EXPECT_FALSE(p.a_tilde.has_value());
    EXPECT_FALSE(p.a_hat.has_value());
  }
}

TEST(Phase, OrderingAboveTwo) {
  for (double c = 2.2; c <= 8.0; c += 0.3) {
    const auto p = gs::phase_points(c);
    ASSERT_TRUE(p.a_tilde && p.a_hat) << c;
    EXPECT_GT(*p.a_tilde, 0.0);
    EXPECT_LT(*p.a_tilde, 0.5);
    EXPECT_LT(*p.a_tilde, 2.0 / c);
    EXPECT_GT(*p.a_hat, 0.5);
    EXPECT_LT(*p.a_hat, p.a_star);
    EXPECT_LE(p.a_star, 1.0);
    const auto s = gs::i_alpha_slopes_at_break(c);
    EXPECT_GT(s.left, s.right) << c;
  }
}

// Second differences: convex below a_tilde, concave between a_tilde and
// a_hat, convex above a_hat.
TEST(Phase, ConvexityPatternAtThree) {
  const double c = 3.0;
  const auto p = gs::phase_points(c);
  const double delta = 0.01;
  const double h = 1e-3;
  for (double a = 0.02; a < 1.0 - h; a += 0.005) {
    const double d2 = gs::i_alpha(a - h, c) - 2.0 * gs::i_alpha(a, c) + gs::i_alpha(a + h, c);
    if (a < *p.a_tilde - delta || a > *p.a_hat + delta) {
      EXPECT_GT(d2, 0.0) << a;
    } else if (a > *p.a_tilde + delta && a < *p.a_hat - delta) {
      EXPECT_LT(d2, 0.0) << a;
    }
  }
}

TEST(Phase, CountProfile) {
  EXPECT_NEAR(gs::count_profile(0.0, 3.0), 0.5, 1e-15);
  EXPECT_EQ(gs::count_profile(1.0, 3.0), 0.0);
  EXPECT_EQ(gs::a_star(1.5), 0.5);
  EXPECT_EQ(gs::tau_star(0.0, 3.0), 1.0);
  EXPECT_EQ(gs::tau_star(0.8, 3.0), 0.0);
}

TEST(Phase, StepanovLegendreDuality) {
  for (double c : {1.5, 3.0}) {
    const gs::AlphaCurve curve(c);
    EXPECT_NEAR(gs::stepanov_S(0.0, c), 0.0, 1e-12);
    for (int i = 0; i <= 40; ++i) {
      const double lambda = -2.0 + 0.1 * i;
      EXPECT_NEAR(gs::stepanov_S(lambda, c), curve.legendre(lambda), 1e-6) << c << ' ' << lambda;
    }
  }
}

TEST(Phase, BidualBelowRateInConcaveRegion) {
  const auto p = gs::phase_points(3.0);
  double gap = 0.0;
  for (double a = *p.a_tilde; a <= *p.a_hat; a += 0.005) {
    gap = std::max(gap, gs::i_alpha(a, 3.0) - gs::stepanov_bidual(a, 3.0));
  }
  EXPECT_GE(gap, 1e-4);
  for (double a : {0.1, 0.7}) {
    EXPECT_NEAR(gs::stepanov_bidual(a, 3.0), gs::i_alpha(a, 3.0), 1e-5) << a;
  }
}
