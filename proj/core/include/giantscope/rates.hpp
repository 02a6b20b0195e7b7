#pragma once

// Closed-form action functionals for the component statistics of G(n, c/n).
// Every function returns kInfinity (never a large finite number) outside its
// effective domain.

#include <optional>
#include <span>
#include <vector>

#include "giantscope/numerics.hpp"

namespace giantscope {

/// Intensity c together with solver settings. Immutable once built.
class RateParams {
 public:
  explicit RateParams(double c, SolverOptions solver = {});
  double c() const noexcept { return c_; }
  const SolverOptions& solver() const noexcept { return solver_; }

 private:
  double c_;
  SolverOptions solver_;
};

/// pi(x) = x log x - x + 1, pi(0) = 1.
double pi_fn(double x);

/// K_rho(u) = u log(rho u / (1 - e^{-rho u})) - rho u^2 / 2.
double k_rho(double u, double rho);

/// dK_rho(u)/drho.
double k_rho_drho(double u, double rho);

/// L_c(u) = (1-u) log(1-u) + (c - log c) u - c u^2 / 2.
double l_c(double u, double c);

/// Positive root of 1 - beta = exp(-beta c) for c > 1, zero otherwise.
double beta_fp(double c, const SolverOptions& opts = {});

struct LlnConstants {
  double alpha;
  double beta;
  double gamma;
};

LlnConstants lln_constants(double c, const SolverOptions& opts = {});

/// Excess-edge density at which sup_rho is attained at rho = c.
double r_star(double u, double c);

/// (c/2)(1-M)^2 pi(2(1-a-M) / (c(1-M)^2)) with 0/0 = 1 and 0*inf = 0.
double small_component_term(double c, double a, double m);

struct KStar {
  double value;
  double rho;  ///< maximizer; 0 when r = 0
};

/// sup_{rho >= 0} (K_rho(u) + r log(rho/c)) through the stationarity
/// equation y coth y - 1 = r/u with y = rho u / 2.
KStar k_star_solve(double u, double r, double c, const SolverOptions& opts = {});
double k_star(double u, double r, double c, const SolverOptions& opts = {});

/// The same supremum by a scan over log(rho) with Brent refinement. Used to
/// cross-check k_star.
double k_star_scan(double u, double r, double c, int grid = 4096);

/// Giant sizes u (non-increasing) with aligned excess densities r; both are
/// implicitly padded with zeros.
struct SpectrumQuery {
  std::optional<double> a;
  std::vector<double> u;
  std::vector<double> r;

  /// Throws std::invalid_argument on negative entries, u outside [0,1],
  /// u increasing somewhere, or a outside [0,1].
  void validate() const;
};

/// Joint functional of (components count, giant sizes, giant excess).
double i_joint(const SpectrumQuery& q, double c, const SolverOptions& opts = {});

/// Joint functional of (components count, giant sizes).
double i_alpha_U(double a, std::span<const double> u, double c);

double i_U(std::span<const double> u, double c);
double i_UR(std::span<const double> u, std::span<const double> r, double c,
            const SolverOptions& opts = {});

/// Solution of x/(1 - e^{-cx}) = v on [0, v] for v >= 1/c.
double u_hat(double v, double c, const SolverOptions& opts = {});

/// Largest-component functional and its excess-edge extension.
double i_beta(double u, double c, const SolverOptions& opts = {});
double i_beta_gamma(double u, double r, double c, const SolverOptions& opts = {});
double i_alpha_beta_gamma(double a, double u, double r, double c, const SolverOptions& opts = {});

/// Break points x_k of the alternative form: x/(1 - e^{-cx}) = 1 - k x, x_0 = 1.
double oconnell_x(int k, double c, const SolverOptions& opts = {});

struct OConnell {
  int k;
  double value;  ///< k K_c(u) + L_c(k u)
};

/// Alternative form of i_beta for c > 1 and u in (0, 1].
OConnell i_beta_oconnell(double u, double c, const SolverOptions& opts = {});

// ---- components count -----------------------------------------------------

/// f(tau) = (1 - tau)(1 - c tau / (2 (e^{c tau} - 1))).
double count_profile(double tau, double c);

/// Greatest root of count_profile(tau) = a on [0, 1]; 0 when there is none.
double tau_star(double a, double c, const SolverOptions& opts = {});

/// max of count_profile on [0, 1]; 1/2 when c <= 2.
double a_star(double c);

/// The giant-component branch evaluated at tau = tau_star(a).
double i_alpha_giant_branch(double a, double c, const SolverOptions& opts = {});

/// The no-giant branch (c/2) pi(2(1-a)/c).
double i_alpha_no_giant_branch(double a, double c);

double i_alpha(double a, double c, const SolverOptions& opts = {});

/// The defining infimum over tau in [(1-2a)^+, 1-a] by direct minimization.
double i_alpha_direct(double a, double c, int grid = 4096);

struct PhasePoints {
  double a_star;
  std::optional<double> a_tilde;
  std::optional<double> a_hat;
  std::optional<double> tau_tilde;
};

PhasePoints phase_points(double c, const SolverOptions& opts = {});

/// One-sided derivatives of i_alpha at the break-up point.
struct OneSided {
  double left;
  double right;
};
OneSided i_alpha_slopes_at_break(double c, const SolverOptions& opts = {});

/// Limiting log moment generating function of the components count.
double stepanov_S(double lambda, double c, int grid = 4096);

/// i_alpha tabulated on a uniform a-grid, for repeated Legendre transforms.
class AlphaCurve {
 public:
  explicit AlphaCurve(double c, int grid = 4096, const SolverOptions& opts = {});

  double c() const noexcept { return c_; }
  std::span<const double> values() const noexcept { return values_; }

  /// sup_a (lambda a - i_alpha(a)): best grid point, then Brent refinement
  /// on the neighbouring cells with exact evaluations.
  double legendre(double lambda) const;

 private:
  double c_;
  SolverOptions opts_;
  std::vector<double> values_;
};

/// sup_lambda (lambda a - S_c(lambda)) over lambda in [lo, hi].
double stepanov_bidual(double a, double c, double lambda_lo = -20.0, double lambda_hi = 20.0);

// ---- critical window ---------------------------------------------------

double breve_i_U(std::span<const double> u, double theta);
double breve_i_UR(std::span<const double> u, std::span<const double> r, double theta);
double breve_i_beta(double u, double theta);
double breve_i_alpha_UR(double a, std::span<const double> u, std::span<const double> r,
                        double theta_hat);

}  // namespace giantscope
