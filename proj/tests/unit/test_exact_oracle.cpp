#include <sstream>

#include <gtest/gtest.h>

#include "giantscope/exact_oracle.hpp"

namespace gs = giantscope;

TEST(ExactOracle, SizeLawN4) {
  const auto d = gs::enumerate_exact(4, 0.2);
  EXPECT_NEAR(d.total(), 1.0, 1e-14);
  const auto law = d.size_law();
  ASSERT_EQ(law.size(), 5u);
  EXPECT_NEAR(law.at({1, 1, 1, 1}), 0.262144, 1e-14);
  EXPECT_NEAR(law.at({2, 1, 1}), 0.393216, 1e-14);
  EXPECT_NEAR(law.at({2, 2}), 0.049152, 1e-14);
  EXPECT_NEAR(law.at({3, 1}), 0.212992, 1e-14);
  EXPECT_NEAR(law.at({4}), 0.082496, 1e-14);
  EXPECT_NEAR(d.expected_count(), 2.835008, 1e-13);
  EXPECT_NEAR(d.expected_total_excess(), 0.035008, 1e-13);
}

TEST(ExactOracle, SizeLawN5) {
  const auto law = gs::enumerate_exact(5, 0.5).size_law();
  EXPECT_NEAR(law.at({1, 1, 1, 1, 1}), 0.0009765625, 1e-15);
  EXPECT_NEAR(law.at({2, 1, 1, 1}), 0.009765625, 1e-15);
  EXPECT_NEAR(law.at({2, 2, 1}), 0.0146484375, 1e-15);
  EXPECT_NEAR(law.at({3, 1, 1}), 0.0390625, 1e-15);
  EXPECT_NEAR(law.at({3, 2}), 0.0390625, 1e-15);
  EXPECT_NEAR(law.at({4, 1}), 0.185546875, 1e-15);
  EXPECT_NEAR(law.at({5}), 0.7109375, 1e-15);
  const auto d = gs::enumerate_exact(5, 0.5);
  EXPECT_NEAR(d.expected_count(), 1.365234375, 1e-14);
  EXPECT_NEAR(d.expected_total_excess(), 1.365234375, 1e-14);
}

TEST(ExactOracle, CountLawN3) {
  const auto law = gs::enumerate_exact(3, 0.5).count_law();
  EXPECT_NEAR(law.at(1), 0.5, 1e-15);
  EXPECT_NEAR(law.at(2), 0.375, 1e-15);
  EXPECT_NEAR(law.at(3), 0.125, 1e-15);
}

// Every graph has edges = n - count + total excess, so the means obey the
// same identity.
TEST(ExactOracle, EulerIdentityInExpectation) {
  for (int n = 1; n <= 7; ++n) {
    for (double p : {0.1, 0.5, 0.9}) {
      const auto d = gs::enumerate_exact(n, p);
      const double edges = p * n * (n - 1) / 2.0;
      EXPECT_NEAR(d.expected_count() + edges - d.expected_total_excess(), n, 1e-11);
    }
  }
}

TEST(ExactOracle, ExplorationForwardPassAgrees) {
  for (int n = 1; n <= 8; ++n) {
    for (double p : {0.05, 0.3, 0.7}) {
      EXPECT_NEAR(gs::expected_count_exploration(n, p),
                  gs::enumerate_exact(n, p).expected_count(), 1e-12)
          << "n=" << n << " p=" << p;
    }
  }
}

TEST(ExactOracle, IndependentOfThreadCount) {
  const auto one = gs::enumerate_exact(7, 0.35, 1);
  const auto many = gs::enumerate_exact(7, 0.35, 4);
  EXPECT_EQ(one.table(), many.table());
}

TEST(ExactOracle, Capacity) {
  EXPECT_THROW(gs::enumerate_exact(0, 0.5), gs::CapacityError);
  EXPECT_THROW(gs::enumerate_exact(9, 0.5), gs::CapacityError);
  EXPECT_THROW(gs::enumerate_exact(4, 1.5), std::invalid_argument);
}

TEST(ExactOracle, DegenerateProbabilities) {
  EXPECT_NEAR(gs::enumerate_exact(6, 0.0).size_law().at({1, 1, 1, 1, 1, 1}), 1.0, 1e-15);
  const auto full = gs::enumerate_exact(6, 1.0);
  EXPECT_NEAR(full.largest_law().at(6), 1.0, 1e-15);
  EXPECT_NEAR(full.expected_total_excess(), 10.0, 1e-13);
}

TEST(ExactOracle, TvDistance) {
  const std::map<int, double> a{{1, 0.5}, {2, 0.5}};
  const std::map<int, double> b{{2, 0.25}, {3, 0.75}};
  EXPECT_DOUBLE_EQ(gs::tv_distance(a, b), 0.75);
  EXPECT_EQ(gs::tv_distance(a, a), 0.0);
}

TEST(ExactOracle, JsonShape) {
  std::ostringstream os;
  gs::write_json(os, gs::enumerate_exact(2, 0.5));
  const std::string s = os.str();
  EXPECT_NE(s.find("\"entries\""), std::string::npos);
  EXPECT_NE(s.find("\"prob\""), std::string::npos);
}
