#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "giantscope/random.hpp"

namespace gs = giantscope;

TEST(Random, StreamsArePureFunctionsOfSeed) {
  EXPECT_EQ(gs::stream_seed({7, 3}), gs::stream_seed({7, 3}));
  EXPECT_NE(gs::stream_seed({7, 3}), gs::stream_seed({7, 4}));
  EXPECT_NE(gs::stream_seed({7, 3}), gs::stream_seed({8, 3}));
  auto a = gs::make_rng({1, 2});
  auto b = gs::make_rng({1, 2});
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
}

TEST(Random, Uniform01Range) {
  auto rng = gs::make_rng({5, 0});
  for (int i = 0; i < 10000; ++i) {
    const double u = gs::uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Random, BinomialEdgeCases) {
  auto rng = gs::make_rng({1, 0});
  EXPECT_EQ(gs::sample_binomial(rng, 0, 0.5), 0);
  EXPECT_EQ(gs::sample_binomial(rng, 10, 0.0), 0);
  EXPECT_EQ(gs::sample_binomial(rng, 10, 1.0), 10);
  EXPECT_EQ(gs::sample_poisson(rng, 0.0), 0);
  EXPECT_EQ(gs::sample_poisson(rng, -1.0), 0);
}

// Mean and variance against np and np(1-p) on both sides of the inversion
// cutoff, at 6 standard errors.
TEST(Random, BinomialMoments) {
  for (const auto& [trials, p] : std::vector<std::pair<std::int64_t, double>>{
           {20, 0.1}, {1000, 0.003}, {100000, 0.4}}) {
    auto rng = gs::make_rng({11, static_cast<std::uint64_t>(trials)});
    const int reps = 40000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double x = static_cast<double>(gs::sample_binomial(rng, trials, p));
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, static_cast<double>(trials));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / reps;
    const double var = sq / reps - mean * mean;
    const double v = static_cast<double>(trials) * p * (1.0 - p);
    EXPECT_NEAR(mean, static_cast<double>(trials) * p, 6.0 * std::sqrt(v / reps));
    EXPECT_NEAR(var / v, 1.0, 0.05);
  }
}

TEST(Random, PoissonMoments) {
  for (double mean : {0.3, 4.0, 60.0}) {
    auto rng = gs::make_rng({12, static_cast<std::uint64_t>(mean * 10)});
    const int reps = 40000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double x = static_cast<double>(gs::sample_poisson(rng, mean));
      sum += x;
      sq += x * x;
    }
    const double m = sum / reps;
    EXPECT_NEAR(m, mean, 6.0 * std::sqrt(mean / reps));
    EXPECT_NEAR((sq / reps - m * m) / mean, 1.0, 0.05);
  }
}
