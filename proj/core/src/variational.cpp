#include "giantscope/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "giantscope/rates.hpp"
#include "giantscope/skorohod.hpp"

namespace giantscope {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double cube(double x) { return x * x * x; }

// Exact integral over a cell of width h of N log(N/D) - N + D, with N
// constant and D linear from d0 to d1.
double entropy_cell(double n, double d0, double d1, double h) {
  const double mean_d = 0.5 * (d0 + d1);
  if (n == 0.0) return h * mean_d;
  if (d0 == 0.0 && d1 == 0.0) return kInfinity;
  const double spread = d1 - d0;
  double mean_log;
  if (std::fabs(spread) <= 1e-6 * std::max(d0, d1)) {
    const double eps = 0.5 * spread / mean_d;
    const double e2 = eps * eps;
    mean_log = std::log(mean_d) - e2 / 6.0 - e2 * e2 / 20.0;
  } else {
    mean_log = (xlogx(d1) - xlogx(d0)) / spread - 1.0;
  }
  return h * (xlogx(n) - n - n * mean_log + mean_d);
}

constexpr double kSlack = 1e-12;

// Weight c(1 - t - y) at grid point k; nullopt-like negative marks violation.
double weight(double c, double t, double y) {
  const double d = c * (1.0 - t - y);
  if (d < 0.0 && d > -kSlack) return 0.0;
  return d;
}

}  // namespace

LlnCurves lln_curves(double c, std::size_t cells) {
  const double b = beta_fp(c);
  auto q = [c, b](double t) { return t <= b ? -t - std::expm1(-c * t) : 0.0; };
  auto phi = [c, b](double t) {
    return t >= b ? 0.5 * c * (t * t - b * b) - (c - 1.0) * (t - b) : 0.0;
  };
  auto e = [c, b](double t) {
    const double m = std::min(t, b);
    return std::expm1(-c * m) + c * m - 0.5 * c * m * m;
  };
  return {Trajectory::sample(0.0, 1.0, cells, q), Trajectory::sample(0.0, 1.0, cells, phi),
          Trajectory::sample(0.0, 1.0, cells, e)};
}

double excursion_rho(double length, double w, const SolverOptions& opts) {
  if (!(length > 0.0)) throw std::invalid_argument("excursion_rho: length must be positive");
  const double target = 2.0 * w / (length * length);
  if (!(target >= 0.0 && target < 1.0)) {
    throw std::invalid_argument("excursion_rho: need 0 <= w < length^2 / 2");
  }
  if (target == 0.0) return 0.0;
  const auto f = [target](double y) { return numerics::coth_minus_inverse(y) - target; };
  const double y = numerics::bisect(f, 0.0, 1.0 / (1.0 - target) + 1.0, opts);
  return 2.0 * y / length;
}

double excursion_area(double length, double rho) {
  if (rho <= 0.0) return 0.0;
  return length / rho * numerics::ycoth_minus_one(0.5 * rho * length);
}

OptimalExcursion optimal_excursion(double s, double t, double w, double c, std::size_t cells,
                                   const SolverOptions& opts) {
  if (!(s >= 0.0 && s < t && t <= 1.0)) {
    throw std::invalid_argument("optimal_excursion: need 0 <= s < t <= 1");
  }
  const double len = t - s;
  if (!(w >= 0.0 && w < 0.5 * len * len)) {
    throw std::invalid_argument("optimal_excursion: need 0 <= w < (t-s)^2 / 2");
  }
  const double rho = excursion_rho(len, w, opts);
  const double ends = l_c(t, c) - l_c(s, c);
  if (rho == 0.0) {
    return {Trajectory::sample(s, t, cells, [](double) { return 0.0; }), 0.0, ends};
  }
  const double denom = std::expm1(-rho * len);
  auto path = Trajectory::sample(s, t, cells, [&](double p) {
    if (p <= s || p >= t) return 0.0;
    return (s - p) + len * std::expm1(-rho * (p - s)) / denom;
  });
  return {std::move(path), rho, k_rho(len, rho) + (rho - c) * w + ends};
}

Trajectory optimal_excursion_critical(double s, double t, double w, std::size_t cells) {
  if (!(s < t)) throw std::invalid_argument("optimal_excursion_critical: need s < t");
  if (!(w >= 0.0)) throw std::invalid_argument("optimal_excursion_critical: need w >= 0");
  const double scale = 6.0 * w / cube(t - s);
  return Trajectory::sample(s, t, cells, [=](double p) { return scale * (p - s) * (t - p); });
}

double critical_excursion_cost(double s, double t, double w, double theta) {
  return 6.0 * w * w / cube(t - s) - w + (cube(t - theta) - cube(s - theta)) / 6.0;
}

double i_S_functional(const Trajectory& x, double c) {
  const auto reflected = skorohod(x.values()).reflected;
  const double h = x.step();
  numerics::CompensatedSum sum;
  double d_left = weight(c, x.time(0), reflected[0]);
  if (d_left < 0.0) return kInfinity;
  for (std::size_t k = 0; k < x.cells(); ++k) {
    const double slope = x.slope(k);
    if (x[k + 1] - x[k] < -h - kSlack) return kInfinity;
    const double d_right = weight(c, x.time(k + 1), reflected[k + 1]);
    if (d_right < 0.0) return kInfinity;
    sum += entropy_cell(std::max(0.0, slope + 1.0), d_left, d_right, h);
    d_left = d_right;
  }
  return sum.value();
}

double i_S_critical(const Trajectory& x, double theta) {
  numerics::CompensatedSum sum;
  for (std::size_t k = 0; k < x.cells(); ++k) {
    const double m = x.slope(k);
    sum += (cube(m + x.time(k + 1) - theta) - cube(m + x.time(k) - theta)) / 6.0;
  }
  return sum.value();
}

namespace {

// Shared pass for the regulator functionals. `runs` receives the total of
// K_c over maximal flat runs when non-null.
double regulator_pass(const Trajectory& phi, double c, double flat_tol, double* runs) {
  if (std::fabs(phi[0]) > flat_tol) return kInfinity;
  const double h = phi.step();
  numerics::CompensatedSum sum;
  numerics::CompensatedSum flat;
  double run = 0.0;
  auto close_run = [&] {
    if (run > 0.0) flat += k_rho(run, c);
    run = 0.0;
  };
  for (std::size_t k = 0; k < phi.cells(); ++k) {
    const double delta = phi[k + 1] - phi[k];
    if (delta < -flat_tol) return kInfinity;
    const double slope = delta / h;
    if (delta > h + kSlack) return kInfinity;
    const double d0 = weight(c, phi.time(k), 0.0);
    const double d1 = weight(c, phi.time(k + 1), 0.0);
    if (d0 < 0.0 || d1 < 0.0) return kInfinity;
    sum += entropy_cell(std::max(0.0, 1.0 - slope), d0, d1, h);
    if (std::fabs(delta) < flat_tol) {
      run += h;
    } else {
      close_run();
    }
  }
  close_run();
  if (runs) *runs = flat.value();
  return sum.value();
}

}  // namespace

double phi_entropy_integral(const Trajectory& phi, double c, double flat_tol) {
  return regulator_pass(phi, c, flat_tol, nullptr);
}

double i_phi_functional(const Trajectory& phi, double c, double flat_tol) {
  double runs = 0.0;
  const double integral = regulator_pass(phi, c, flat_tol, &runs);
  return std::isfinite(integral) ? integral + runs : integral;
}

double i_Q_functional(const Trajectory& q, double c, double zero_tol) {
  if (std::fabs(q[0]) > zero_tol) return kInfinity;
  const double h = q.step();
  const double giant_edge = std::max(0.0, 1.0 - 1.0 / c);
  numerics::CompensatedSum sum;
  for (std::size_t k = 0; k < q.cells(); ++k) {
    const double y0 = q[k];
    const double y1 = q[k + 1];
    const double t0 = q.time(k);
    const double t1 = q.time(k + 1);
    if (y0 < -zero_tol || y1 < -zero_tol) return kInfinity;
    const double slope = q.slope(k);
    if (y1 - y0 < -q.step() - kSlack) return kInfinity;
    const double d0 = weight(c, t0, std::max(y0, 0.0));
    const double d1 = weight(c, t1, std::max(y1, 0.0));
    if (d0 < 0.0 || d1 < 0.0) return kInfinity;
    if (std::fabs(y0) <= zero_tol && std::fabs(y1) <= zero_tol) {
      const double end = std::min(t1, giant_edge);
      if (end > t0) {
        sum += entropy_cell(1.0, weight(c, t0, 0.0), weight(c, end, 0.0), end - t0);
      }
    } else {
      sum += entropy_cell(std::max(0.0, slope + 1.0), d0, d1, h);
    }
  }
  return sum.value();
}

OptimalRegulator optimal_regulator(double a, double tau, double c, std::size_t cells) {
  if (!(a >= 0.0 && a <= 1.0) || !(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("optimal_regulator: a and tau must lie in [0, 1]");
  }
  const double m = std::clamp(std::max(1.0 - 2.0 * a, tau), 0.0, 1.0);
  const double cost = l_c(m, c) + small_component_term(c, a, m);
  if (!std::isfinite(cost) || m >= 1.0) {
    return {Trajectory::sample(0.0, 1.0, cells, [](double) { return 0.0; }), cost};
  }
  const double surplus = 1.0 - m - a;
  auto phi = Trajectory::sample(0.0, 1.0, cells, [=](double t) {
    if (t <= m) return 0.0;
    const double rel = (1.0 - t) / (1.0 - m);
    return (t - m) - surplus * (1.0 - rel * rel);
  });
  return {std::move(phi), cost};
}

double critical_regulator_cost(double tau, double theta) {
  return (std::max(cube(tau - theta), 0.0) + cube(theta)) / 6.0;
}

OptimalRegulator critical_regulator(double tau, double theta, double horizon, std::size_t cells) {
  if (!(tau >= 0.0)) throw std::invalid_argument("critical_regulator: tau must be >= 0");
  const double start = std::max(tau, theta);
  if (!(horizon > start)) {
    throw std::invalid_argument("critical_regulator: horizon must exceed max(tau, theta)");
  }
  auto phi = Trajectory::sample(0.0, horizon, cells, [=](double t) {
    if (t <= start) return 0.0;
    return 0.5 * ((t - theta) * (t - theta) - (start - theta) * (start - theta));
  });
  return {std::move(phi), critical_regulator_cost(tau, theta)};
}

double i_phi_critical(const Trajectory& phi, double theta) {
  numerics::CompensatedSum sum;
  for (std::size_t k = 0; k < phi.cells(); ++k) {
    const double m = phi.slope(k);
    sum += (cube(phi.time(k + 1) - theta - m) - cube(phi.time(k) - theta - m)) / 6.0;
  }
  return sum.value();
}

}  // namespace giantscope
