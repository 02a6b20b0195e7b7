#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "giantscope/random.hpp"
#include "giantscope/rates.hpp"
#include "giantscope/variational.hpp"

namespace gs = giantscope;

namespace {

gs::Trajectory perturbed(const gs::Trajectory& base, double eps, double lo, double hi, int waves) {
  std::vector<double> v(base.values().begin(), base.values().end());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double t = base.time(k);
    if (t > lo && t < hi) v[k] += eps * std::sin(2.0 * std::numbers::pi * waves * (t - lo) / (hi - lo));
  }
  return base.with_values(std::move(v));
}

}  // namespace

TEST(Lln, CurvesAndZeroCost) {
  const auto q10 = gs::lln_curves(2.0, 10);
  EXPECT_NEAR(q10.qbar[3], 0.151188363905973567, 1e-14);
  for (double c : {1.5, 2.0, 3.0}) {
    const auto lln = gs::lln_curves(c);
    const double b = gs::beta_fp(c);
    EXPECT_EQ(lln.qbar[0], 0.0);
    EXPECT_NEAR(lln.qbar[lln.qbar.cells()], 0.0, 1e-15);
    EXPECT_NEAR(lln.phibar[lln.phibar.cells()], gs::lln_constants(c).alpha, 1e-12);
    EXPECT_NEAR(lln.ebar[lln.ebar.cells()], gs::lln_constants(c).gamma, 1e-12);
    EXPECT_NEAR(gs::i_phi_functional(lln.phibar, c), 0.0, 1e-4) << c;
    EXPECT_NEAR(gs::i_Q_functional(gs::lln_curves(c, 100000).qbar, c), 0.0, 1e-4) << c;
    for (std::size_t k = 0; k < lln.qbar.size(); ++k) {
      EXPECT_GE(lln.qbar[k], 0.0);
      if (lln.qbar.time(k) < b) {
        EXPECT_EQ(lln.phibar[k], 0.0);
      }
    }
  }
}

TEST(Excursion, FrozenValues) {
  const auto e = gs::optimal_excursion(0.2, 0.7, 0.03, 2.0);
  EXPECT_NEAR(e.rho, 2.98528203701107209, 1e-10);
  EXPECT_NEAR(e.cost, 0.00472420548474125039, 1e-12);
  EXPECT_NEAR(gs::k_rho_drho(0.5, e.rho), -0.03, 1e-10);
  const double d = 1e-6;
  EXPECT_NEAR((gs::k_rho(0.5, e.rho + d) - gs::k_rho(0.5, e.rho - d)) / (2.0 * d), -0.03, 1e-6);
}

TEST(Excursion, ConstraintsAtGridPoints) {
  gs::Rng rng = gs::make_rng({21, 0});
  for (int i = 0; i < 20; ++i) {
    const double s = 0.6 * gs::uniform01(rng);
    const double t = s + 0.05 + (1.0 - s - 0.05) * gs::uniform01(rng);
    const double w = 0.45 * (t - s) * (t - s) * gs::uniform01(rng);
    const auto e = gs::optimal_excursion(s, t, w, 2.5);
    EXPECT_EQ(e.path[0], 0.0);
    EXPECT_EQ(e.path[e.path.cells()], 0.0);
    EXPECT_NEAR(gs::excursion_area(t - s, e.rho), w, 1e-12);
    EXPECT_NEAR(e.path.integral(), w, 1e-7);
    for (std::size_t k = 0; k < e.path.size(); ++k) EXPECT_GE(e.path[k], 0.0);
  }
}

TEST(Excursion, QuadratureConvergesQuadratically) {
  std::vector<double> errs;
  for (std::size_t n : {128u, 256u, 512u}) {
    const auto e = gs::optimal_excursion(0.2, 0.7, 0.03, 2.0, n);
    errs.push_back(std::fabs(gs::i_S_functional(e.path, 2.0) - e.cost));
  }
  for (int i = 0; i < 2; ++i) {
    const double ratio = errs[i] / errs[i + 1];
    EXPECT_GT(ratio, 3.0) << i;
    EXPECT_LT(ratio, 5.0) << i;
  }
}

TEST(Excursion, PerturbationDoesNotLowerCost) {
  const auto e = gs::optimal_excursion(0.1, 0.8, 0.05, 3.0);
  const double base = gs::i_S_functional(e.path, 3.0);
  for (double eps : {1e-3, -1e-3, 5e-3}) {
    for (int waves : {1, 2}) {
      EXPECT_GE(gs::i_S_functional(perturbed(e.path, eps, 0.1, 0.8, waves), 3.0), base - 1e-9);
    }
  }
}

TEST(Excursion, ZeroAreaAndErrors) {
  const auto e = gs::optimal_excursion(0.2, 0.6, 0.0, 2.0);
  EXPECT_EQ(e.rho, 0.0);
  EXPECT_NEAR(e.cost, gs::l_c(0.6, 2.0) - gs::l_c(0.2, 2.0), 1e-15);
  EXPECT_THROW(gs::optimal_excursion(0.5, 0.4, 0.01, 2.0), std::invalid_argument);
  EXPECT_THROW(gs::optimal_excursion(0.2, 0.4, 0.03, 2.0), std::invalid_argument);
  EXPECT_THROW(gs::excursion_rho(0.0, 0.1), std::invalid_argument);
}

TEST(Functionals, DomainViolationsAreInfinite) {
  const auto steep = gs::Trajectory::sample(0.0, 0.5, 10, [](double t) { return 1.0 - 3.0 * t; });
  EXPECT_EQ(gs::i_S_functional(steep, 2.0), gs::kInfinity);
  const auto down = gs::Trajectory::sample(0.0, 1.0, 10, [](double t) { return -0.1 * t; });
  EXPECT_EQ(gs::i_phi_functional(down, 2.0), gs::kInfinity);
  EXPECT_EQ(gs::i_Q_functional(down, 2.0), gs::kInfinity);
  const auto fast = gs::Trajectory::sample(0.0, 1.0, 10, [](double t) { return 2.0 * t; });
  EXPECT_EQ(gs::phi_entropy_integral(fast, 2.0), gs::kInfinity);
}

TEST(Regulator, FrozenCostAndQuadrature) {
  const auto r = gs::optimal_regulator(0.25, 0.6, 2.0);
  EXPECT_NEAR(r.cost, 0.0579146207437351125, 1e-14);
  EXPECT_NEAR(r.cost, gs::l_c(0.6, 2.0) + 0.16 * gs::pi_fn(0.9375), 1e-14);
  EXPECT_NEAR(gs::phi_entropy_integral(r.phi, 2.0), r.cost, 1e-5);
  EXPECT_NEAR(r.phi[r.phi.cells()], 0.25, 1e-14);
  for (std::size_t k = 0; k < r.phi.cells(); ++k) {
    EXPECT_GE(r.phi[k + 1], r.phi[k]);
    EXPECT_LE(r.phi.slope(k), 1.0 + 1e-12);
  }
  const auto zero = gs::optimal_regulator(0.0, 0.3, 2.0);
  EXPECT_NEAR(zero.cost, gs::l_c(1.0, 2.0), 1e-15);
  EXPECT_EQ(zero.phi[zero.phi.cells()], 0.0);
  EXPECT_THROW(gs::optimal_regulator(1.5, 0.2, 2.0), std::invalid_argument);
}

TEST(Regulator, PerturbationDoesNotLowerCost) {
  const auto r = gs::optimal_regulator(0.25, 0.6, 2.0);
  const double base = gs::phi_entropy_integral(r.phi, 2.0);
  for (double eps : {1e-3, -1e-3}) {
    for (int waves : {1, 3}) {
      EXPECT_GE(gs::phi_entropy_integral(perturbed(r.phi, eps, 0.6, 1.0, waves), 2.0), base - 1e-9);
    }
  }
}

// Sorting the slopes of an admissible regulator into increasing order never
// raises the entropy cost.
TEST(Regulator, IncreasingRearrangementIsCheaper) {
  gs::Rng rng = gs::make_rng({22, 0});
  const std::size_t cells = 400;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> slopes(cells);
    for (double& x : slopes) x = 0.05 + 0.9 * gs::uniform01(rng);
    auto build = [&](const std::vector<double>& sl) {
      std::vector<double> v(cells + 1, 0.0);
      for (std::size_t k = 0; k < cells; ++k) v[k + 1] = v[k] + sl[k] / cells;
      return gs::Trajectory(0.0, 1.0, std::move(v));
    };
    const double original = gs::phi_entropy_integral(build(slopes), 2.0);
    std::sort(slopes.begin(), slopes.end());
    EXPECT_LE(gs::phi_entropy_integral(build(slopes), 2.0), original + 1e-12);
  }
}

TEST(Critical, ParabolaAndRegulatorCosts) {
  for (double theta : {-1.0, 0.0, 1.0}) {
    const auto p = gs::optimal_excursion_critical(0.3, 1.4, 0.1);
    EXPECT_NEAR(gs::i_S_critical(p, theta), gs::critical_excursion_cost(0.3, 1.4, 0.1, theta), 1e-6);
    EXPECT_NEAR(p.integral(), 0.1, 1e-7);
    const auto r = gs::critical_regulator(0.5, theta, 4.0);
    EXPECT_NEAR(gs::i_phi_critical(r.phi, theta), r.cost, 1e-6);
    EXPECT_NEAR(r.cost, gs::critical_regulator_cost(0.5, theta), 0.0);
  }
  EXPECT_EQ(gs::critical_regulator_cost(0.0, -0.5), 0.0);
  EXPECT_EQ(gs::critical_regulator_cost(0.0, 0.0), 0.0);
}
