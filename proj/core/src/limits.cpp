#include "giantscope/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "giantscope/exploration.hpp"
#include "giantscope/rates.hpp"

namespace giantscope {

double LimitParams::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool LimitParams::is_psd(double tol) const {
  return (cov - cov.transpose()).cwiseAbs().maxCoeff() <= tol && min_eigenvalue() >= -tol;
}

LimitParams clt_params(double c, double theta) {
  if (!(c > 0.0)) throw std::invalid_argument("clt_params: c must be positive");
  const double b = beta_fp(c);
  LimitParams p;
  p.c = c;
  p.theta = theta;
  p.mean(0) = -theta * (1.0 - b * b) / 2.0;
  p.cov(0, 0) = b * (1.0 - b) + c * (1.0 - b) * (1.0 - b) / 2.0;
  p.valid_beta_gamma = c > 1.0;
  if (!p.valid_beta_gamma) return p;
  const double d = 1.0 - c * (1.0 - b);
  p.mean(1) = theta * b * (1.0 - b) / d;
  p.mean(2) = theta * b * b / 2.0;
  p.cov(1, 1) = b * (1.0 - b) / (d * d);
  p.cov(2, 2) = b * (1.0 - b) + c * b * (3.0 * b / 2.0 - 1.0);
  p.cov(0, 1) = p.cov(1, 0) = -b * (1.0 - b) / d;
  p.cov(0, 2) = p.cov(2, 0) = -b * (1.0 - b) * (c - 1.0);
  p.cov(1, 2) = p.cov(2, 1) = b * (1.0 - b) * (c - 1.0) / d;
  return p;
}

LimitParams md_params(double c, double theta_hat) { return clt_params(c, theta_hat); }

double md_action(const LimitParams& params, const Eigen::Vector3d& y) {
  if (!params.valid_beta_gamma) {
    const double z = y(0) - params.mean(0);
    return z * z / (2.0 * params.cov(0, 0));
  }
  const Eigen::Vector3d z = y - params.mean;
  return 0.5 * z.dot(params.cov.ldlt().solve(z));
}

void CriticalPath::validate() const {
  if (x.size() < 2) throw std::invalid_argument("CriticalPath: need at least two grid points");
  if (!(dt > 0.0)) throw std::invalid_argument("CriticalPath: dt must be positive");
  if (marks.size() != x.size()) throw std::invalid_argument("CriticalPath: marks size");
  if (touch.size() + 1 != x.size()) throw std::invalid_argument("CriticalPath: touch size");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= 0.0)) throw std::invalid_argument("CriticalPath: x must be non-negative");
    if (k > 0 && marks[k] < marks[k - 1]) {
      throw std::invalid_argument("CriticalPath: marks must be non-decreasing");
    }
  }
}

double default_critical_horizon(double theta) { return 2.0 * std::max(theta, 0.0) + 6.0; }

CriticalPath simulate_critical_limit(double theta, double horizon, double dt, Rng& rng,
                                     CriticalOptions opts) {
  if (!(horizon > 0.0) || !(dt > 0.0) || dt > horizon) {
    throw std::invalid_argument("simulate_critical_limit: need 0 < dt <= T");
  }
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  CriticalPath path;
  path.dt = horizon / static_cast<double>(steps);
  path.theta = theta;
  path.x.assign(steps + 1, 0.0);
  path.marks.assign(steps + 1, 0);
  path.cell_intensity.assign(steps, 0.0);
  path.touch.assign(steps, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sd = std::sqrt(path.dt);
  double free = 0.0;
  double running_min = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = path.time(k);
    const double t1 = path.time(k + 1);
    const double start = free;
    free += theta * path.dt - 0.5 * (t1 * t1 - t0 * t0);
    double low = std::min(start, free);
    if (opts.noise) {
      free += sd * normal(rng);
      // Minimum of a Brownian bridge from start to free over the cell.
      const double gap = free - start;
      const double e = -std::log1p(-uniform01(rng));
      low = 0.5 * (start + free - std::sqrt(gap * gap + 2.0 * path.dt * e));
    }
    if (low <= running_min) {
      running_min = low;
      path.touch[k] = 1;
    }
    path.x[k + 1] = free - running_min;
    const double mean = 0.5 * path.dt * (path.x[k] + path.x[k + 1]);
    path.cell_intensity[k] = mean;
    path.marks[k + 1] = path.marks[k] + (opts.noise ? sample_poisson(rng, mean) : 0);
  }
  return path;
}

CriticalPath simulate_critical_limit(double theta, double horizon, double dt, RngSeed seed,
                                     CriticalOptions opts) {
  Rng rng = make_rng(seed);
  return simulate_critical_limit(theta, horizon, dt, rng, opts);
}

ExcursionSet excursions(const CriticalPath& path, double min_len) {
  path.validate();
  if (min_len <= 0.0) min_len = 2.0 * path.dt;
  struct Item {
    double length;
    std::int64_t marks;
  };
  std::vector<Item> items;
  const std::size_t cells = path.touch.size();
  // Zero positions in units of dt: 0 and k + 1/2 for touching cells.
  double last_zero = 0.0;
  std::size_t first_inside = 0;
  auto close = [&](double zero, std::size_t end_cell) {
    const double length = path.dt * (zero - last_zero);
    if (length >= min_len - 1e-12 * path.dt) {
      const std::int64_t m =
          end_cell > first_inside ? path.marks[end_cell] - path.marks[first_inside] : 0;
      items.push_back({length, m});
    }
  };
  for (std::size_t k = 0; k < cells; ++k) {
    if (!path.touch[k]) continue;
    const double zero = static_cast<double>(k) + 0.5;
    close(zero, k);
    last_zero = zero;
    first_inside = k + 1;
  }
  close(static_cast<double>(cells), cells);
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.length > b.length; });
  ExcursionSet out;
  for (const auto& it : items) {
    out.lengths.push_back(it.length);
    out.marks.push_back(it.marks);
  }
  return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

CriticalSample critical_exploration_sample(std::int64_t n, double theta, Rng& rng) {
  const double nd = static_cast<double>(n);
  const double c = 1.0 + theta * std::cbrt(1.0 / nd);
  const ComponentSpectrum spec = explore_spectrum(GraphParams(n, std::max(c, 0.0)), rng);
  return {static_cast<double>(spec.largest()) / std::cbrt(nd * nd), spec.largest_excess()};
}

void write_path_csv(std::ostream& os, const CriticalPath& path) {
  os << "t,x,marks\n";
  for (std::size_t k = 0; k < path.x.size(); ++k) {
    os << path.time(k) << ',' << path.x[k] << ',' << path.marks[k] << '\n';
  }
}

}  // namespace giantscope
