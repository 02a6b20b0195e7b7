#pragma once

// Gaussian fluctuation parameters of (components count, largest component,
// its excess edges) and the critical-window limit process.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "giantscope/random.hpp"

namespace giantscope {

/// Mean and covariance of the Gaussian limit. When valid_beta_gamma is
/// false (c <= 1) only mean(0) and cov(0,0) carry meaning; the other entries
/// are zero.
struct LimitParams {
  double c = 0.0;
  double theta = 0.0;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  bool valid_beta_gamma = false;

  double min_eigenvalue() const;
  bool is_psd(double tol = 1e-10) const;
};

/// Normal-deviation limit with drift theta = lim sqrt(n)(c_n - c).
LimitParams clt_params(double c, double theta);

/// Moderate-deviation parameters: identical formulas with theta_hat.
LimitParams md_params(double c, double theta_hat);

/// (y - mu)^T Sigma^{-1} (y - mu) / 2, or the scalar alpha form when only
/// the alpha entry is valid (y(1), y(2) ignored).
double md_action(const LimitParams& params, const Eigen::Vector3d& y);

/// Reflected Brownian motion with parabolic drift and Poisson marks.
struct CriticalPath {
  double dt = 0.0;
  double theta = 0.0;
  std::vector<double> x;              ///< reflected path at t_k = k dt
  std::vector<std::int64_t> marks;    ///< cumulative marks at t_k
  std::vector<double> cell_intensity; ///< Poisson mean on [t_k, t_{k+1}]
  std::vector<std::uint8_t> touch;    ///< 1 if the path hits zero inside cell k

  double horizon() const noexcept { return dt * static_cast<double>(x.empty() ? 0 : x.size() - 1); }
  double time(std::size_t k) const noexcept { return dt * static_cast<double>(k); }

  /// Throws std::invalid_argument if x < 0, marks decrease, or sizes differ.
  void validate() const;
};

struct CriticalOptions {
  bool noise = true;  ///< false gives the deterministic skeleton
};

/// Default horizon 2 theta^+ + 6.
double default_critical_horizon(double theta);

/// Grid path of the Skorohod reflection of W_t + theta t - t^2/2 on [0, T].
/// Each step adds sqrt(dt) Z plus the exact drift integral. The running
/// minimum also sees the minimum of the Brownian bridge inside each cell,
/// drawn exactly given the endpoints, so zeros between grid points are not
/// missed. Marks on a cell are Poisson with mean equal to the trapezoidal
/// integral of x over the cell.
CriticalPath simulate_critical_limit(double theta, double horizon, double dt, Rng& rng,
                                     CriticalOptions opts = {});
CriticalPath simulate_critical_limit(double theta, double horizon, double dt, RngSeed seed,
                                     CriticalOptions opts = {});

struct ExcursionSet {
  std::vector<double> lengths;            ///< descending
  std::vector<std::int64_t> marks;        ///< aligned with lengths
};

/// Intervals between successive zeros of the path, a zero being placed at
/// the midpoint of every touching cell and at t = 0; the last interval is
/// censored at the horizon. Marks count the cells strictly inside. Intervals
/// shorter than min_len are dropped; min_len <= 0 means 2 dt.
ExcursionSet excursions(const CriticalPath& path, double min_len = 0.0);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// Largest component of G(n, c_n/n) with c_n = 1 + theta n^{-1/3}, scaled by
/// n^{2/3}, from one exploration run, with its raw excess-edge count.
struct CriticalSample {
  double largest;
  std::int64_t excess;
};
CriticalSample critical_exploration_sample(std::int64_t n, double theta, Rng& rng);

/// CSV t,x,marks.
void write_path_csv(std::ostream& os, const CriticalPath& path);

}  // namespace giantscope
