#pragma once

// Scalar numerics shared by the rate-function and variational code: stable
// kernels around removable singularities, bracketed root finding and 1-D
// maximization by grid scan plus Brent refinement.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/minima.hpp>

namespace giantscope {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Tolerances for every transcendental solve and scan in the library.
struct SolverOptions {
  double tol = 1e-12;  ///< bracket width at which bisection stops
  int grid = 4096;     ///< coarse scan resolution used to locate brackets
  int newton_steps = 4;
};

/// Error raised when a solver cannot bracket or converge. The CLI maps this
/// to exit status 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace numerics {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (!std::isfinite(t)) {
      sum_ = t;
      return;
    }
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return std::isfinite(sum_) ? sum_ + carry_ : sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// log(sinh(y)/y) for y >= 0.
inline double log_sinhc(double y) {
  const double a = std::fabs(y);
  if (a < 0.25) {
    const double z = a * a;
    return z * (1.0 / 6 +
                z * (-1.0 / 180 +
                     z * (1.0 / 2835 +
                          z * (-1.0 / 37800 +
                               z * (2.137779915557693e-6 + z * -1.803670234005331e-7)))));
  }
  if (a > 20.0) {
    return a + std::log1p(-std::exp(-2.0 * a)) - std::log(2.0 * a);
  }
  return std::log(std::sinh(a) / a);
}

namespace detail {
// Taylor coefficients of y*coth(y) - 1 in powers y^2, y^4, ..., y^18.
inline constexpr double kYcothSeries[] = {
    1.0 / 3,   -1.0 / 45,  2.0 / 945, -1.0 / 4725, 2.1377799155576933e-5,
    -2.1644042808063972e-6, 2.1925947851873778e-7, -2.2214608789979679e-8,
    2.2507846516808993e-9};

// sum_k coef_k * weight(k) * z^k for k = 0..8, in Horner form.
template <class Weight>
double ycoth_series(double z, Weight weight) {
  double acc = 0.0;
  for (int k = 8; k >= 0; --k) acc = acc * z + kYcothSeries[k] * weight(k + 1);
  return acc;
}
}  // namespace detail

/// y*coth(y) - 1, which behaves like y^2/3 near zero.
inline double ycoth_minus_one(double y) {
  const double a = std::fabs(y);
  if (a < 0.25) {
    const double z = a * a;
    return z * detail::ycoth_series(z, [](int) { return 1.0; });
  }
  return a / std::tanh(a) - 1.0;
}

/// coth(y) - 1/y, the derivative of log_sinhc.
inline double coth_minus_inverse(double y) {
  const double a = std::fabs(y);
  if (a < 0.25) {
    const double z = a * a;
    return a * detail::ycoth_series(z, [](int) { return 1.0; });
  }
  return 1.0 / std::tanh(a) - 1.0 / a;
}

/// Derivative of ycoth_minus_one: coth(y) - y/sinh(y)^2.
inline double ycoth_minus_one_derivative(double y) {
  const double a = std::fabs(y);
  if (a < 0.25) {
    const double z = a * a;
    return a * detail::ycoth_series(z, [](int k) { return 2.0 * k; });
  }
  if (a > 20.0) return 1.0 / std::tanh(a);
  const double s = std::sinh(a);
  return 1.0 / std::tanh(a) - a / (s * s);
}

/// x / (1 - exp(-x)) for x >= 0, equal to 1 at x = 0.
inline double x_over_one_minus_exp(double x) {
  if (std::fabs(x) < 1e-6) return 1.0 + x / 2.0 + x * x / 12.0;
  return x / -std::expm1(-x);
}

/// x / (exp(x) - 1), equal to 1 at x = 0.
inline double x_over_exp_minus_one(double x) {
  if (std::fabs(x) < 1e-6) return 1.0 - x / 2.0 + x * x / 12.0;
  return x / std::expm1(x);
}

/// D * pi(N / D) = N log(N/D) - N + D under 0/0 = 1 and 0*inf = 0.
/// Negative arguments lie outside every rate function's domain.
inline double entropy_term(double numer, double denom) {
  if (numer < 0.0 || denom < 0.0) return kInfinity;
  if (numer == 0.0) return denom;
  if (denom == 0.0) return kInfinity;
  return numer * std::log(numer / denom) - numer + denom;
}

/// Root of f in [lo, hi] where f(lo) and f(hi) differ in sign. Bisects to
/// width tol, then polishes with guarded Newton steps that must stay inside
/// the final bracket.
template <class F, class DF>
double bisect_newton(F&& f, DF&& df, double lo, double hi, const SolverOptions& opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericalError("bisect_newton: endpoints do not bracket a root");
  }
  for (int it = 0; it < 400 && hi - lo > opts.tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int k = 0; k < opts.newton_steps && fx != 0.0; ++k) {
    const double d = df(x);
    if (!(d != 0.0) || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next >= lo && next <= hi)) break;
    const double fn = f(next);
    if (!(std::fabs(fn) < std::fabs(fx))) break;
    x = next;
    fx = fn;
  }
  return x;
}

template <class F>
double bisect(F&& f, double lo, double hi, const SolverOptions& opts = {}) {
  SolverOptions o = opts;
  o.newton_steps = 0;
  return bisect_newton(f, [](double) { return 0.0; }, lo, hi, o);
}

/// Scans [lo, hi] downward from hi on a uniform grid and returns the first
/// (that is, right-most) sub-interval across which f changes sign.
template <class F>
std::optional<std::pair<double, double>> bracket_greatest_root(F&& f, double lo, double hi,
                                                               int grid) {
  const double h = (hi - lo) / grid;
  double right = hi;
  double f_right = f(right);
  if (f_right == 0.0) return std::make_pair(hi, hi);
  for (int k = grid - 1; k >= 0; --k) {
    const double left = (k == 0) ? lo : lo + k * h;
    const double f_left = f(left);
    if (f_left == 0.0 || (f_left > 0.0) != (f_right > 0.0)) {
      return std::make_pair(left, right);
    }
    right = left;
    f_right = f_left;
  }
  return std::nullopt;
}

struct Maximum {
  double x;
  double value;
};

/// Maximizes f on [lo, hi]: uniform scan, then Brent refinement on the two
/// cells around the best grid point. Endpoints are always candidates.
template <class F>
Maximum maximize_scan(F&& f, double lo, double hi, int grid) {
  if (hi <= lo) return {lo, f(lo)};
  const double h = (hi - lo) / grid;
  int best = 0;
  double best_value = -kInfinity;
  for (int k = 0; k <= grid; ++k) {
    const double x = (k == grid) ? hi : lo + k * h;
    const double v = f(x);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  Maximum result{best == grid ? hi : lo + best * h, best_value};
  if (!std::isfinite(best_value)) return result;
  const double a = std::max(lo, lo + (best - 1) * h);
  const double b = std::min(hi, lo + (best + 1) * h);
  std::uintmax_t iters = 200;
  const auto neg = [&f](double x) { return -f(x); };
  const auto [x, v] = boost::math::tools::brent_find_minima(
      neg, a, b, std::numeric_limits<double>::digits / 2, iters);
  if (-v > result.value) result = {x, -v};
  return result;
}

template <class F>
Maximum minimize_scan(F&& f, double lo, double hi, int grid) {
  auto neg = [&f](double x) { return -f(x); };
  const Maximum m = maximize_scan(neg, lo, hi, grid);
  return {m.x, -m.value};
}

/// Golden-section maximization of a unimodal function on [lo, hi].
template <class F>
Maximum maximize_unimodal(F&& f, double lo, double hi, double tol = 1e-13) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  Maximum best{0.5 * (a + b), f(0.5 * (a + b))};
  for (double x : {lo, hi}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

}  // namespace numerics
}  // namespace giantscope
