#include <algorithm>
#include <cmath>

#include "giantscope/rates.hpp"

namespace giantscope {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// d/dz of z / (e^z - 1).
double x_over_exp_minus_one_derivative(double z) {
  if (std::fabs(z) < 1e-4) return -0.5 + z / 6.0;
  const double em1 = std::expm1(z);
  return (em1 - z * std::exp(z)) / (em1 * em1);
}

double count_profile_derivative(double tau, double c) {
  const double h = numerics::x_over_exp_minus_one(c * tau);
  return -(1.0 - 0.5 * h) - 0.5 * (1.0 - tau) * c * x_over_exp_minus_one_derivative(c * tau);
}

// Location of the maximum of count_profile on [0, 1].
double a_star_location(double c) {
  if (c <= 2.0) return 0.0;
  return numerics::maximize_unimodal([c](double t) { return count_profile(t, c); }, 0.0, 1.0).x;
}

}  // namespace

double count_profile(double tau, double c) {
  return (1.0 - tau) * (1.0 - 0.5 * numerics::x_over_exp_minus_one(c * tau));
}

double a_star(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("a_star: c must be positive");
  if (c <= 2.0) return 0.5;
  return count_profile(a_star_location(c), c);
}

double tau_star(double a, double c, const SolverOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("tau_star: c must be positive");
  if (a <= 0.0) return 1.0;
  const auto g = [a, c](double t) { return count_profile(t, c) - a; };
  const auto dg = [c](double t) { return count_profile_derivative(t, c); };
  const auto bracket = numerics::bracket_greatest_root(g, 0.0, 1.0, opts.grid);
  if (!bracket) {
    // A tangency at the maximum gives no sign change.
    if (c > 2.0 && std::fabs(a - a_star(c)) <= 1e-12) return a_star_location(c);
    return 0.0;
  }
  if (bracket->first == bracket->second) return bracket->first;
  return numerics::bisect_newton(g, dg, bracket->first, bracket->second, opts);
}

double i_alpha_giant_branch(double a, double c, const SolverOptions& opts) {
  const double tau = tau_star(a, c, opts);
  return k_rho(tau, c) + l_c(tau, c) + small_component_term(c, a, tau);
}

double i_alpha_no_giant_branch(double a, double c) {
  return 0.5 * numerics::entropy_term(2.0 * (1.0 - a), c);
}

double i_alpha(double a, double c, const SolverOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("i_alpha: c must be positive");
  if (!(a >= 0.0 && a <= 1.0)) return kInfinity;
  const double top = a_star(c);
  double value;
  if (a <= 0.5) {
    value = i_alpha_giant_branch(a, c, opts);
  } else if (a >= top) {
    value = i_alpha_no_giant_branch(a, c);
  } else {
    value = std::min(i_alpha_giant_branch(a, c, opts), i_alpha_no_giant_branch(a, c));
  }
  return (value < 0.0 && value > -1e-12) ? 0.0 : value;
}

double i_alpha_direct(double a, double c, int grid) {
  if (!(a >= 0.0 && a <= 1.0)) return kInfinity;
  const double lo = std::max(0.0, 1.0 - 2.0 * a);
  const double hi = 1.0 - a;
  const auto f = [a, c](double tau) {
    return k_rho(tau, c) + l_c(tau, c) + small_component_term(c, a, tau);
  };
  return numerics::minimize_scan(f, lo, hi, grid).value;
}

PhasePoints phase_points(double c, const SolverOptions& opts) {
  PhasePoints pts{a_star(c), std::nullopt, std::nullopt, std::nullopt};
  if (c <= 2.0) return pts;
  const auto g = [c](double t) { return std::expm1(-c * t) + c * t - c * t * t; };
  const auto bracket = numerics::bracket_greatest_root(g, 0.0, 1.0, opts.grid);
  if (!bracket) throw NumericalError("phase_points: no convexity boundary found");
  const double tau_tilde = numerics::bisect(g, bracket->first, bracket->second, opts);
  pts.tau_tilde = tau_tilde;
  pts.a_tilde = count_profile(tau_tilde, c);
  const auto diff = [c, &opts](double a) {
    return i_alpha_no_giant_branch(a, c) - i_alpha_giant_branch(a, c, opts);
  };
  pts.a_hat = numerics::bisect(diff, 0.5, pts.a_star, opts);
  return pts;
}

OneSided i_alpha_slopes_at_break(double c, const SolverOptions& opts) {
  const PhasePoints pts = phase_points(c, opts);
  if (!pts.a_hat) throw std::invalid_argument("i_alpha_slopes_at_break: needs c > 2");
  const double a = *pts.a_hat;
  const double tau = tau_star(a, c, opts);
  const double left = -std::log(2.0 * (1.0 - a - tau) / (c * (1.0 - tau) * (1.0 - tau)));
  const double right = -std::log(2.0 * (1.0 - a) / c);
  return {left, right};
}

double stepanov_S(double lambda, double c, int grid) {
  if (!(c > 0.0)) throw std::invalid_argument("stepanov_S: c must be positive");
  const double e_minus = std::exp(-lambda);
  const auto f = [lambda, c, e_minus](double tau) {
    const double w = 1.0 - tau;
    const double tail = tau > 0.0 ? tau * std::log(-std::expm1(-c * tau)) : 0.0;
    return lambda * w + 0.5 * c * w * w * e_minus - xlogx(w) - 0.5 * c * (1.0 - tau * tau) -
           xlogx(tau) + tail;
  };
  const double lo = std::max(0.0, 1.0 - std::exp(lambda) / c);
  return numerics::maximize_scan(f, lo, 1.0, grid).value;
}

AlphaCurve::AlphaCurve(double c, int grid, const SolverOptions& opts)
    : c_(c), opts_(opts), values_(static_cast<std::size_t>(grid) + 1) {
  if (grid < 2) throw std::invalid_argument("AlphaCurve: grid must be at least 2");
  for (int k = 0; k <= grid; ++k) values_[k] = i_alpha(static_cast<double>(k) / grid, c, opts);
}

double AlphaCurve::legendre(double lambda) const {
  const int grid = static_cast<int>(values_.size()) - 1;
  int best = 0;
  double best_value = -kInfinity;
  for (int k = 0; k <= grid; ++k) {
    const double v = lambda * k / grid - values_[k];
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double lo = static_cast<double>(std::max(0, best - 1)) / grid;
  const double hi = static_cast<double>(std::min(grid, best + 1)) / grid;
  const auto f = [this, lambda](double a) { return lambda * a - i_alpha(a, c_, opts_); };
  const auto refined = numerics::maximize_scan(f, lo, hi, 8);
  return std::max(best_value, refined.value);
}

double stepanov_bidual(double a, double c, double lambda_lo, double lambda_hi) {
  const auto f = [a, c](double lambda) { return lambda * a - stepanov_S(lambda, c); };
  return numerics::maximize_unimodal(f, lambda_lo, lambda_hi, 1e-10).value;
}

}  // namespace giantscope
