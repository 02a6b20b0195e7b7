#include <functional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli.hpp"
#include "commands.hpp"
#include "giantscope/numerics.hpp"
#include "giantscope/version.hpp"

namespace giantscope::cli {

namespace {

using Command = std::function<int(RunConfig&, std::ostream&)>;

// Option helpers. Each subcommand declares only the flags it reads, so any
// other flag (or config key) is rejected by the parser.
void opt_n(CLI::App* sub, RunConfig& cfg, const char* help, bool required = false) {
  auto* o = sub->add_option("--n", cfg.n, help);
  if (required) o->required();
}

void opt_c(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--c", cfg.c, "mean degree c (edge probability c/n)")->check(CLI::NonNegativeNumber);
}

void opt_reps_seed(CLI::App* sub, RunConfig& cfg, std::uint64_t reps) {
  cfg.reps = reps;
  sub->add_option("--reps", cfg.reps, "Monte Carlo replications")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "master seed; replication r uses stream (seed, r)")
      ->capture_default_str();
}

void opt_out(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
}

void opt_svg(CLI::App* sub, RunConfig& cfg) {
  sub->add_flag("--svg", cfg.svg, "also write SVG figures")->default_str("false");
}

void opt_seedless(CLI::App* sub, RunConfig& cfg) {
  sub->add_flag("--seedless", cfg.seedless, "assert that the run uses no randomness")
      ->default_str("false");
}

void opt_grid(CLI::App* sub, RunConfig& cfg, const char* help) {
  sub->add_option("--grid", cfg.grid, help);
}

void opt_tol(CLI::App* sub, RunConfig& cfg, const char* help) {
  sub->add_option("--tol", cfg.tol, help)->check(CLI::PositiveNumber);
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s;
}

ParamEcho echo_of(const CLI::App* sub) {
  ParamEcho echo;
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      value = join(opt->results());
    } else {
      value = opt->get_default_str().empty() ? "unset" : opt->get_default_str();
    }
    echo.emplace_back(name, value);
  }
  return echo;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Random-graph exploration, exact component laws and large-deviation rate functions",
               "giantscope"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "INI/TOML file; keys go in a [subcommand] section and "
                                 "command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  std::vector<std::pair<CLI::App*, Command>> commands;
  auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };

  {
    auto* sub = add("simulate", "exploration Monte Carlo; spectrum CSV, summary JSON, empirical law",
                    cmd_simulate);
    opt_n(sub, cfg, "number of vertices", true);
    opt_c(sub, cfg);
    auto* p = sub->add_option("--p", cfg.p, "edge probability (instead of --c)");
    p->excludes("--c");
    opt_reps_seed(sub, cfg, 1000);
    sub->add_option("--method", cfg.method, "sampler")
        ->check(CLI::IsMember({"explore", "direct"}))
        ->capture_default_str();
    sub->add_flag("--rows", cfg.rows, "write one CSV row per component")->default_str("false");
    sub->add_flag("--trace", cfg.trace, "write the exploration trace of replication 0")
        ->default_str("false");
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("exact", "exact law of the component spectrum by enumeration (n <= 8), JSON",
                    cmd_exact);
    opt_n(sub, cfg, "number of vertices (1..8)", true);
    opt_c(sub, cfg);
    sub->add_option("--p", cfg.p, "edge probability (instead of --c)")->excludes("--c");
    sub->add_option("--compare", cfg.compare, "law.json from `simulate`; report the TV distance")
        ->check(CLI::ExistingFile);
    opt_tol(sub, cfg, "TV threshold for --compare (default 0.005)");
    opt_seedless(sub, cfg);
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("rates", "evaluate a rate function on a grid, CSV", cmd_rates);
    sub->add_option("--fn", cfg.fn, std::string("function: ") + rate_function_names())->required();
    opt_c(sub, cfg);
    sub->add_option("--a", cfg.a, "component density a");
    sub->add_option("--u", cfg.u, "comma list: further giant sizes u_2, u_3, ...")->delimiter(',');
    sub->add_option("--r", cfg.r, "comma list of excess densities")->delimiter(',');
    sub->add_option("--theta", cfg.theta, "critical-window parameter");
    opt_grid(sub, cfg, "lo:hi:step for the function argument");
    opt_tol(sub, cfg, "cross-check tolerance (default 1e-8)");
    opt_svg(sub, cfg);
    opt_seedless(sub, cfg);
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("phase", "phase points and I^alpha curves for a list of c",
                    cmd_phase);
    sub->add_option("--c", cfg.c_list, "comma list of c (default 3)")->delimiter(',');
    opt_grid(sub, cfg, "a grid lo:hi:step (default 0:1:0.001)");
    sub->add_option("--regions", cfg.regions, "c grid for the convexity regions (default 2.1:8:0.1)");
    opt_svg(sub, cfg);
    opt_seedless(sub, cfg);
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("traj", "optimal trajectories with quadrature cross-checks", cmd_traj);
    opt_c(sub, cfg);
    sub->add_option("--s", cfg.s, "excursion start (default 0.2)");
    sub->add_option("--t", cfg.t, "excursion end (default 0.7)");
    sub->add_option("--w", cfg.w, "excursion area (default 0.03)");
    sub->add_option("--a", cfg.a, "component density for the regulator (default 0.25)");
    sub->add_option("--tau", cfg.tau, "flat time of the regulator (default 0.6)");
    sub->add_option("--theta", cfg.theta, "critical drift for the parabola check (default 1)");
    sub->add_option("--cells", cfg.cells, "quadrature cells")->capture_default_str();
    sub->add_option("--points", cfg.points, "rows per path CSV")->capture_default_str();
    opt_tol(sub, cfg, "quadrature tolerance (default 1e-4)");
    opt_svg(sub, cfg);
    opt_seedless(sub, cfg);
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("critical", "critical-window limit process Monte Carlo and the I^beta curve",
                    cmd_critical);
    sub->add_option("--theta", cfg.theta, "critical-window parameter (default 0)");
    opt_n(sub, cfg, "also sample G(n, (1 + theta n^-1/3)/n) by exploration");
    opt_reps_seed(sub, cfg, 1000);
    sub->add_option("--dt", cfg.dt, "time step (default 1e-3)");
    sub->add_option("--horizon", cfg.horizon, "time horizon (default 2 theta^+ + 6)");
    opt_grid(sub, cfg, "u grid for the rate curve");
    opt_svg(sub, cfg);
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("clt-check", "empirical fluctuations of (count, largest, excess) vs the Gaussian limit",
                    cmd_clt_check);
    opt_c(sub, cfg);
    opt_n(sub, cfg, "number of vertices (default 100000)");
    opt_reps_seed(sub, cfg, 1000);
    opt_out(sub, cfg);
  }
  {
    auto* sub = add("beta-ldp", "largest-component rate function with the alternative-form check",
                    cmd_beta_ldp);
    opt_c(sub, cfg);
    opt_grid(sub, cfg, "u grid (default 0:1:0.001)");
    opt_tol(sub, cfg, "cross-check tolerance (default 1e-10)");
    opt_svg(sub, cfg);
    opt_seedless(sub, cfg);
    opt_out(sub, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    cfg.echo = echo_of(sub);
    try {
      return fn(cfg, out);
    } catch (const ValidationError& e) {
      err << "giantscope " << cfg.command << ": " << e.what() << '\n';
      return 2;
    } catch (const std::invalid_argument& e) {
      err << "giantscope " << cfg.command << ": " << e.what() << '\n';
      return 2;
    } catch (const CheckFailure& e) {
      err << "giantscope " << cfg.command << ": check failed: " << e.what() << '\n';
      return 1;
    } catch (const NumericalError& e) {
      err << "giantscope " << cfg.command << ": numerical failure: " << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      err << "giantscope " << cfg.command << ": " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace giantscope::cli
