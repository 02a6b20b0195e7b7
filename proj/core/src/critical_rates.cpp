#include <algorithm>
#include <cmath>

#include "giantscope/rates.hpp"

namespace giantscope {

namespace {

double cube(double x) { return x * x * x; }

double sum_of(std::span<const double> u) {
  numerics::CompensatedSum s;
  for (double x : u) s += x;
  return s.value();
}

}  // namespace

double breve_i_U(std::span<const double> u, double theta) {
  numerics::CompensatedSum sum;
  for (double x : u) {
    if (!(x >= 0.0) || !std::isfinite(x)) return kInfinity;
    sum += -cube(x) / 24.0;
  }
  sum += std::max(cube(sum_of(u) - theta), 0.0) / 6.0;
  sum += cube(theta) / 6.0;
  return sum.value();
}

double breve_i_UR(std::span<const double> u, std::span<const double> r, double theta) {
  const double base = breve_i_U(u, theta);
  if (!std::isfinite(base)) return base;
  numerics::CompensatedSum sum;
  sum += base;
  const std::size_t len = std::max(u.size(), r.size());
  for (std::size_t i = 0; i < len; ++i) {
    const double ui = i < u.size() ? u[i] : 0.0;
    const double ri = i < r.size() ? r[i] : 0.0;
    if (!(ri >= 0.0)) return kInfinity;
    sum += numerics::entropy_term(12.0 * ri, cube(ui)) / 24.0;
  }
  return sum.value();
}

double breve_i_beta(double u, double theta) {
  if (!(u >= 0.0) || !std::isfinite(u)) return kInfinity;
  const double pos = std::max(theta, 0.0);
  if (u == 0.0) return cube(pos) / 6.0;
  if (u < pos) {
    const double k = std::floor(theta / u);
    const double rest = std::min(2.0 * (theta - k * u), u);
    return -k * cube(u) / 24.0 - cube(rest) / 24.0 + cube(k * u + rest - theta) / 6.0 +
           cube(theta) / 6.0;
  }
  return -cube(u) / 24.0 + cube(u - theta) / 6.0 + cube(theta) / 6.0;
}

double breve_i_alpha_UR(double a, std::span<const double> u, std::span<const double> r,
                        double theta_hat) {
  const double shift = a + 0.5 * theta_hat;
  return shift * shift + breve_i_UR(u, r, 0.0);
}

}  // namespace giantscope
