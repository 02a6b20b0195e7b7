#include "giantscope/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace giantscope {

namespace {

constexpr double kClampTol = 1e-12;

double clamp_rate(double x) { return (x < 0.0 && x > -kClampTol) ? 0.0 : x; }

double sum_of(std::span<const double> u) {
  numerics::CompensatedSum s;
  for (double x : u) s += x;
  return s.value();
}

double at(std::span<const double> v, std::size_t i) { return i < v.size() ? v[i] : 0.0; }

void check_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("rate functions need c > 0");
}

}  // namespace

RateParams::RateParams(double c, SolverOptions solver) : c_(c), solver_(solver) {
  check_c(c);
  if (!(solver.tol > 0.0)) throw std::invalid_argument("RateParams: tol must be positive");
  if (solver.grid < 2) throw std::invalid_argument("RateParams: grid must be at least 2");
}

double pi_fn(double x) {
  if (x < 0.0 || std::isnan(x)) throw std::invalid_argument("pi_fn: x must be non-negative");
  if (x == 0.0) return 1.0;
  return x * std::log(x) - x + 1.0;
}

double k_rho(double u, double rho) {
  if (u <= 0.0 || rho <= 0.0) return 0.0;
  return -u * numerics::log_sinhc(0.5 * rho * u);
}

double k_rho_drho(double u, double rho) {
  if (u <= 0.0) return 0.0;
  return -0.5 * u * u * numerics::coth_minus_inverse(0.5 * std::max(rho, 0.0) * u);
}

double l_c(double u, double c) {
  check_c(c);
  const double one_minus = 1.0 - u;
  const double ent = one_minus > 0.0 ? one_minus * std::log(one_minus) : 0.0;
  return ent + (c - std::log(c)) * u - 0.5 * c * u * u;
}

double beta_fp(double c, const SolverOptions& opts) {
  check_c(c);
  if (c <= 1.0) return 0.0;
  const auto h = [c](double b) { return -b - std::expm1(-b * c); };
  const auto dh = [c](double b) { return -1.0 + c * std::exp(-b * c); };
  const double lo = (c - 1.0) / (c * c);
  return numerics::bisect_newton(h, dh, lo, 1.0, opts);
}

LlnConstants lln_constants(double c, const SolverOptions& opts) {
  const double b = beta_fp(c, opts);
  const double w = 1.0 - b;
  return {1.0 - b - 0.5 * c * w * w, b, (c - 1.0) * b - 0.5 * c * b * b};
}

double r_star(double u, double c) {
  check_c(c);
  return u * numerics::ycoth_minus_one(0.5 * c * u);
}

double small_component_term(double c, double a, double m) {
  double numer = 2.0 * (1.0 - a - m);
  if (numer < 0.0 && numer > -1e-14) numer = 0.0;
  const double denom = c * (1.0 - m) * (1.0 - m);
  return 0.5 * numerics::entropy_term(numer, denom);
}

KStar k_star_solve(double u, double r, double c, const SolverOptions& opts) {
  check_c(c);
  if (r < 0.0 || u < 0.0) throw std::invalid_argument("k_star: u and r must be non-negative");
  if (r == 0.0) return {0.0, 0.0};
  if (u == 0.0) return {kInfinity, kInfinity};
  const double target = r / u;
  const auto g = [target](double y) { return numerics::ycoth_minus_one(y) - target; };
  const auto dg = [](double y) { return numerics::ycoth_minus_one_derivative(y); };
  const double y = numerics::bisect_newton(g, dg, 0.0, target + 2.0, opts);
  const double rho = 2.0 * y / u;
  return {k_rho(u, rho) + r * std::log(rho / c), rho};
}

double k_star(double u, double r, double c, const SolverOptions& opts) {
  return k_star_solve(u, r, c, opts).value;
}

double k_star_scan(double u, double r, double c, int grid) {
  check_c(c);
  if (r == 0.0) return 0.0;
  if (u == 0.0) return kInfinity;
  const double log_c = std::log(c);
  const auto f = [&](double x) { return k_rho(u, std::exp(x)) + r * (x - log_c); };
  return numerics::maximize_scan(f, -40.0, 40.0, grid).value;
}

void SpectrumQuery::validate() const {
  if (a && !(*a >= 0.0 && *a <= 1.0)) throw std::invalid_argument("query: a must lie in [0, 1]");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] >= 0.0 && u[i] <= 1.0)) throw std::invalid_argument("query: u must lie in [0, 1]");
    if (i > 0 && u[i] > u[i - 1]) throw std::invalid_argument("query: u must be non-increasing");
  }
  for (double x : r) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("query: r must be >= 0");
  }
}

double i_joint(const SpectrumQuery& q, double c, const SolverOptions& opts) {
  check_c(c);
  q.validate();
  if (!q.a) throw std::invalid_argument("i_joint: a is required");
  const double a = *q.a;
  const double total = sum_of(q.u);
  if (total > 1.0 - a + 1e-15) return kInfinity;
  numerics::CompensatedSum sum;
  const std::size_t len = std::max(q.u.size(), q.r.size());
  for (std::size_t i = 0; i < len; ++i) {
    const double ui = at(q.u, i);
    const double ri = at(q.r, i);
    if (ui == 0.0) {
      if (ri > 0.0) return kInfinity;
      continue;
    }
    sum += k_star(ui, ri, c, opts);
  }
  const double m = std::min(1.0, std::max(1.0 - 2.0 * a, total));
  sum += l_c(m, c);
  sum += small_component_term(c, a, m);
  return clamp_rate(sum.value());
}

double i_alpha_U(double a, std::span<const double> u, double c) {
  check_c(c);
  if (!(a >= 0.0 && a <= 1.0)) return kInfinity;
  const double total = sum_of(u);
  if (total > 1.0 - a + 1e-15) return kInfinity;
  numerics::CompensatedSum sum;
  for (double x : u) sum += k_rho(x, c);
  const double m = std::min(1.0, std::max(1.0 - 2.0 * a, total));
  sum += l_c(m, c);
  sum += small_component_term(c, a, m);
  return clamp_rate(sum.value());
}

double i_U(std::span<const double> u, double c) {
  check_c(c);
  const double total = sum_of(u);
  if (total > 1.0 + 1e-15) return kInfinity;
  numerics::CompensatedSum sum;
  for (double x : u) sum += k_rho(x, c);
  sum += l_c(std::min(1.0, std::max(1.0 - 1.0 / c, total)), c);
  return clamp_rate(sum.value());
}

double i_UR(std::span<const double> u, std::span<const double> r, double c,
            const SolverOptions& opts) {
  check_c(c);
  const double total = sum_of(u);
  if (total > 1.0 + 1e-15) return kInfinity;
  numerics::CompensatedSum sum;
  const std::size_t len = std::max(u.size(), r.size());
  for (std::size_t i = 0; i < len; ++i) {
    const double ui = at(u, i);
    const double ri = at(r, i);
    if (ri < 0.0) return kInfinity;
    if (ui == 0.0) {
      if (ri > 0.0) return kInfinity;
      continue;
    }
    sum += k_star(ui, ri, c, opts);
  }
  sum += l_c(std::min(1.0, std::max(1.0 - 1.0 / c, total)), c);
  return clamp_rate(sum.value());
}

double u_hat(double v, double c, const SolverOptions& opts) {
  check_c(c);
  if (v <= 1.0 / c) return 0.0;
  const auto h = [c, v](double x) { return numerics::x_over_one_minus_exp(c * x) / c - v; };
  return numerics::bisect(h, 0.0, v, opts);
}

namespace {

// Number k of copies of u and the size of the remainder component for a
// largest component u below the giant threshold.
struct Packing {
  double k;
  double rest;
};

Packing pack(double u, double c, const SolverOptions& opts) {
  const double threshold = 1.0 - 1.0 / c;
  const double k = std::floor(threshold / u);
  const double rest = std::min(u_hat(1.0 - k * u, c, opts), u);
  return {k, rest};
}

}  // namespace

double i_beta(double u, double c, const SolverOptions& opts) {
  check_c(c);
  if (!(u >= 0.0 && u <= 1.0)) return kInfinity;
  const double threshold = std::max(0.0, 1.0 - 1.0 / c);
  if (u == 0.0) return l_c(threshold, c);
  if (u < threshold) {
    const auto [k, rest] = pack(u, c, opts);
    return clamp_rate(k * k_rho(u, c) + k_rho(rest, c) + l_c(k * u + rest, c));
  }
  return clamp_rate(k_rho(u, c) + l_c(u, c));
}

double i_beta_gamma(double u, double r, double c, const SolverOptions& opts) {
  check_c(c);
  if (!(u >= 0.0 && u <= 1.0) || !(r >= 0.0)) return kInfinity;
  const double threshold = std::max(0.0, 1.0 - 1.0 / c);
  if (u == 0.0) return r > 0.0 ? kInfinity : l_c(threshold, c);
  const double sup = k_star(u, r, c, opts);
  if (u < threshold) {
    const auto [k, rest] = pack(u, c, opts);
    return clamp_rate(sup + (k - 1.0) * k_rho(u, c) + k_rho(rest, c) + l_c(k * u + rest, c));
  }
  return clamp_rate(sup + l_c(u, c));
}

double i_alpha_beta_gamma(double a, double u, double r, double c, const SolverOptions& opts) {
  check_c(c);
  if (!(a >= 0.0 && a <= 1.0) || !(u >= 0.0) || !(r >= 0.0)) return kInfinity;
  if (u == 0.0) {
    if (r > 0.0) return kInfinity;
    const double m = std::max(0.0, 1.0 - 2.0 * a);
    return clamp_rate(l_c(m, c) + small_component_term(c, a, m));
  }
  if (u > 1.0 - a + 1e-15) return kInfinity;
  const double lo = std::max(1.0 - 2.0 * a, u);
  const double hi = std::max(lo, 1.0 - a);
  const double ku = k_rho(u, c);
  const auto first = static_cast<long long>(std::floor(lo / u));
  const auto last = static_cast<long long>(std::floor(hi / u));
  const long long segments = last - first + 1;
  const int per_segment = static_cast<int>(std::max<long long>(8, opts.grid / segments));
  double best = kInfinity;
  for (long long j = first; j <= last; ++j) {
    const double s0 = std::max(lo, static_cast<double>(j) * u);
    const double s1 = std::min(hi, static_cast<double>(j + 1) * u);
    if (s1 < s0) continue;
    const double jd = static_cast<double>(j);
    const auto f = [&](double tau) {
      return jd * ku + k_rho(std::max(0.0, tau - jd * u), c) + l_c(tau, c) +
             small_component_term(c, a, tau);
    };
    best = std::min(best, numerics::minimize_scan(f, s0, s1, per_segment).value);
  }
  return clamp_rate(k_star(u, r, c, opts) - ku + best);
}

double oconnell_x(int k, double c, const SolverOptions& opts) {
  check_c(c);
  if (k < 0) throw std::invalid_argument("oconnell_x: k must be >= 0");
  if (k == 0) return 1.0;
  if (c <= 1.0) throw std::invalid_argument("oconnell_x: needs c > 1");
  const double kd = k;
  const auto h = [c, kd](double x) {
    return numerics::x_over_one_minus_exp(c * x) / c - 1.0 + kd * x;
  };
  return numerics::bisect(h, 0.0, 1.0 / kd, opts);
}

OConnell i_beta_oconnell(double u, double c, const SolverOptions& opts) {
  check_c(c);
  if (c <= 1.0) throw std::invalid_argument("i_beta_oconnell: needs c > 1");
  if (!(u > 0.0 && u <= 1.0)) throw std::invalid_argument("i_beta_oconnell: u must lie in (0, 1]");
  int k = 1;
  while (u < oconnell_x(k, c, opts)) ++k;
  const double ku = k * u;
  if (ku > 1.0) throw NumericalError("i_beta_oconnell: k u exceeds 1");
  return {k, clamp_rate(k * k_rho(u, c) + l_c(ku, c))};
}

}  // namespace giantscope
