#pragma once

// Optimal trajectories of the exploration LDP and the path functionals they
// minimize. Functionals are integrated exactly on the piecewise-linear
// interpolant of the grid path: on each cell the slope is constant and the
// weight c(1 - t - x) is linear, so the entropy integrand has a closed-form
// cell integral even where the weight vanishes.

#include <cstddef>

#include "giantscope/numerics.hpp"
#include "giantscope/trajectory.hpp"

namespace giantscope {

inline constexpr std::size_t kDefaultCells = 4096;

struct LlnCurves {
  Trajectory qbar;
  Trajectory phibar;
  Trajectory ebar;
};

/// Law-of-large-numbers limits of the queue, regulator and excess processes
/// on [0, 1].
LlnCurves lln_curves(double c, std::size_t cells = kDefaultCells);

struct OptimalExcursion {
  Trajectory path;
  double rho;
  double cost;  ///< sup_rho (K_rho(t-s) + (rho-c) w) + L_c(t) - L_c(s)
};

/// rho solving dK_rho(L)/drho = -w, 0 <= w < L^2/2.
double excursion_rho(double length, double w, const SolverOptions& opts = {});

/// Closed-form integral of the excursion profile on an interval of the
/// given length.
double excursion_area(double length, double rho);

/// Minimizer of I^S on [s, t] with zero endpoints and area w.
/// Throws std::invalid_argument unless 0 <= s < t <= 1 and 0 <= w < (t-s)^2/2.
OptimalExcursion optimal_excursion(double s, double t, double w, double c,
                                   std::size_t cells = kDefaultCells,
                                   const SolverOptions& opts = {});

/// Parabola 6 w (p - s)(t - p) / (t - s)^3 on [s, t].
Trajectory optimal_excursion_critical(double s, double t, double w,
                                      std::size_t cells = kDefaultCells);

/// 6 w^2 / (t-s)^3 - w + ((t - theta)^3 - (s - theta)^3) / 6.
double critical_excursion_cost(double s, double t, double w, double theta);

/// integral of pi((x' + 1) / (c(1 - t - R(x)_t))) c (1 - t - R(x)_t) over the
/// path's interval. Infinite if x' < -1 on a cell or R(x)_t > 1 - t.
double i_S_functional(const Trajectory& x, double c);

/// (1/2) integral of (x' + p - theta)^2.
double i_S_critical(const Trajectory& x, double theta);

/// integral of pi((1 - phi') / (c(1 - t))) c (1 - t); infinite if phi
/// decreases by more than flat_tol on a cell or phi' > 1.
double phi_entropy_integral(const Trajectory& phi, double c, double flat_tol = 1e-12);

/// Regulator functional: entropy integral plus K_c of every maximal run of
/// cells on which phi changes by less than flat_tol.
double i_phi_functional(const Trajectory& phi, double c, double flat_tol = 1e-12);

/// Queue functional. Cells whose endpoints are both within zero_tol of zero
/// count as q = 0; the result depends on grid resolution for paths that
/// graze zero.
double i_Q_functional(const Trajectory& q, double c, double zero_tol = 1e-12);

struct OptimalRegulator {
  Trajectory phi;
  double cost;
};

/// Minimizer of the regulator entropy integral with phi_1 = a and at least
/// tau of flat time: flat up to M = (1-2a) v tau, then linearly decreasing
/// density. The cost is infinite when a > 1 - M.
OptimalRegulator optimal_regulator(double a, double tau, double c,
                                   std::size_t cells = kDefaultCells);

/// ((tau - theta)^3 v 0 + theta^3) / 6.
double critical_regulator_cost(double tau, double theta);

/// Flat up to tau v theta, then slope (t - theta)^+, on [0, horizon].
OptimalRegulator critical_regulator(double tau, double theta, double horizon,
                                    std::size_t cells = kDefaultCells);

/// (1/2) integral of (-phi' - theta + t)^2 over the path's interval.
double i_phi_critical(const Trajectory& phi, double theta);

}  // namespace giantscope
