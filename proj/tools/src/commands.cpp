#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "giantscope/exact_oracle.hpp"
#include "giantscope/exploration.hpp"
#include "giantscope/limits.hpp"
#include "giantscope/mc.hpp"
#include "giantscope/rates.hpp"
#include "giantscope/skorohod.hpp"
#include "giantscope/variational.hpp"
#include "output.hpp"

namespace giantscope::cli {

namespace {

using json = nlohmann::json;

void put_echo(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (auto& [k, v] : cfg.echo) {
    if (k == key) {
      v = value;
      return;
    }
  }
  cfg.echo.emplace_back(key, value);
}

GridSpec resolve_grid(RunConfig& cfg, const std::string& key, const std::string& text,
                      GridSpec fallback) {
  const GridSpec g = text.empty() ? fallback : parse_grid(text);
  put_echo(cfg, key, g.str());
  return g;
}

double resolve(RunConfig& cfg, const std::string& key, const std::optional<double>& value,
               double fallback) {
  const double v = value.value_or(fallback);
  require(std::isfinite(v), "--" + key + " must be finite");
  put_echo(cfg, key, format_number(v));
  return v;
}

double require_c(RunConfig& cfg, double fallback = std::nan("")) {
  const double c = cfg.c.value_or(fallback);
  require(!std::isnan(c), "--c is required");
  require(std::isfinite(c) && c > 0.0, "--c must be positive and finite");
  put_echo(cfg, "c", format_number(c));
  return c;
}

GraphParams graph_params(const RunConfig& cfg) {
  require(*cfg.n >= 1, "--n must be >= 1");
  require(cfg.c.has_value() != cfg.p.has_value(), "give exactly one of --c and --p");
  if (cfg.c) {
    require(std::isfinite(*cfg.c), "--c must be finite");
    return GraphParams(*cfg.n, *cfg.c);
  }
  require(*cfg.p >= 0.0 && *cfg.p <= 1.0, "--p must lie in [0, 1]");
  return GraphParams::with_probability(*cfg.n, *cfg.p);
}

json summary_json(const std::vector<StatSummary>& summary) {
  std::ostringstream ss;
  write_summary_json(ss, summary);
  return json::parse(ss.str());
}

template <class T, class F>
std::vector<double> column_of(const std::vector<T>& rows, F f) {
  std::vector<double> col;
  col.reserve(rows.size());
  for (const auto& r : rows) col.push_back(static_cast<double>(f(r)));
  return col;
}

std::vector<double> downsample_times(const Trajectory& x, std::size_t stride) {
  std::vector<double> t;
  for (std::size_t k = 0; k <= x.cells(); k += stride) t.push_back(x.time(k));
  if ((x.cells() % stride) != 0) t.push_back(x.t1());
  return t;
}

std::vector<double> downsample_values(const Trajectory& x, std::size_t stride) {
  std::vector<double> v;
  for (std::size_t k = 0; k <= x.cells(); k += stride) v.push_back(x[k]);
  if ((x.cells() % stride) != 0) v.push_back(x[x.cells()]);
  return v;
}

struct Check {
  std::string name;
  double expected;
  double computed;
  double tol;

  double error() const { return std::fabs(expected - computed); }
  bool pass() const { return error() <= tol; }
  json to_json() const {
    return {{"check", name},     {"expected", expected}, {"computed", computed},
            {"error", error()},  {"tol", tol},           {"pass", pass()}};
  }
};

// ---- rate-function table --------------------------------------------------

using Evaluator = std::function<double(double)>;

struct RateFn {
  const char* name;
  const char* variable;
  GridSpec fallback;
  double lo;
  double hi;
  bool needs_c;
  std::function<Evaluator(RunConfig&, double c)> make;
};

double single_r(RunConfig& cfg) {
  require(cfg.r.size() == 1, "--r must be a single value for this function");
  require(std::isfinite(cfg.r[0]) && cfg.r[0] >= 0.0, "--r must be non-negative");
  return cfg.r[0];
}

double required_a(RunConfig& cfg) {
  require(cfg.a.has_value(), "--a is required for this function");
  require(*cfg.a >= 0.0 && *cfg.a <= 1.0, "--a must lie in [0, 1]");
  return *cfg.a;
}

double required_theta(RunConfig& cfg) {
  require(cfg.theta.has_value(), "--theta is required for this function");
  require(std::isfinite(*cfg.theta), "--theta must be finite");
  return *cfg.theta;
}

void check_tail(const std::vector<double>& tail, double lo, double hi) {
  for (std::size_t i = 0; i < tail.size(); ++i) {
    require(tail[i] >= lo && tail[i] <= hi, "--u entries out of range");
    require(i == 0 || tail[i] <= tail[i - 1], "--u must be non-increasing");
  }
}

const std::vector<RateFn>& rate_table() {
  static const std::vector<RateFn> table = {
      {"i_alpha", "a", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator { return [c](double a) { return i_alpha(a, c); }; }},
      {"i_alpha_direct", "a", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator {
         return [c](double a) { return i_alpha_direct(a, c); };
       }},
      {"i_alpha_giant", "a", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator {
         return [c](double a) { return i_alpha_giant_branch(a, c); };
       }},
      {"i_alpha_no_giant", "a", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator {
         return [c](double a) { return i_alpha_no_giant_branch(a, c); };
       }},
      {"tau_star", "a", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator { return [c](double a) { return tau_star(a, c); }; }},
      {"count_profile", "tau", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator {
         return [c](double t) { return count_profile(t, c); };
       }},
      {"i_beta", "u", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator { return [c](double u) { return i_beta(u, c); }; }},
      {"i_beta_oconnell", "u", {0.001, 1, 0.001}, 1e-300, 1, true,
       [](RunConfig&, double c) -> Evaluator {
         require(c > 1.0, "i_beta_oconnell needs c > 1");
         return [c](double u) { return i_beta_oconnell(u, c).value; };
       }},
      {"i_beta_gamma", "u", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig& cfg, double c) -> Evaluator {
         const double r = single_r(cfg);
         return [c, r](double u) { return i_beta_gamma(u, r, c); };
       }},
      {"i_alpha_beta_gamma", "u", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig& cfg, double c) -> Evaluator {
         const double a = required_a(cfg);
         const double r = single_r(cfg);
         return [a, c, r](double u) { return i_alpha_beta_gamma(a, u, r, c); };
       }},
      {"k_star", "u", {0.001, 1, 0.001}, 1e-300, 1, true,
       [](RunConfig& cfg, double c) -> Evaluator {
         const double r = single_r(cfg);
         return [c, r](double u) { return k_star(u, r, c); };
       }},
      {"k_c", "u", {0, 1, 0.001}, 0, kInfinity, true,
       [](RunConfig&, double c) -> Evaluator { return [c](double u) { return k_rho(u, c); }; }},
      {"l_c", "u", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator { return [c](double u) { return l_c(u, c); }; }},
      {"r_star", "u", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig&, double c) -> Evaluator { return [c](double u) { return r_star(u, c); }; }},
      {"i_U", "u1", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig& cfg, double c) -> Evaluator {
         check_tail(cfg.u, 0.0, 1.0);
         const std::vector<double> tail = cfg.u;
         return [c, tail](double u1) {
           std::vector<double> u{u1};
           u.insert(u.end(), tail.begin(), tail.end());
           return i_U(u, c);
         };
       }},
      {"i_UR", "u1", {0, 1, 0.001}, 0, 1, true,
       [](RunConfig& cfg, double c) -> Evaluator {
         check_tail(cfg.u, 0.0, 1.0);
         require(cfg.r.size() == cfg.u.size() + 1, "--r needs one entry per giant (1 + |--u|)");
         for (double r : cfg.r) require(std::isfinite(r) && r >= 0.0, "--r must be non-negative");
         const std::vector<double> tail = cfg.u;
         const std::vector<double> r = cfg.r;
         return [c, tail, r](double u1) {
           std::vector<double> u{u1};
           u.insert(u.end(), tail.begin(), tail.end());
           return i_UR(u, r, c);
         };
       }},
      {"breve_i_beta", "u", {0, 4, 0.001}, 0, kInfinity, false,
       [](RunConfig& cfg, double) -> Evaluator {
         const double theta = required_theta(cfg);
         return [theta](double u) { return breve_i_beta(u, theta); };
       }},
      {"breve_i_U", "u1", {0, 4, 0.001}, 0, kInfinity, false,
       [](RunConfig& cfg, double) -> Evaluator {
         const double theta = required_theta(cfg);
         check_tail(cfg.u, 0.0, kInfinity);
         const std::vector<double> tail = cfg.u;
         return [theta, tail](double u1) {
           std::vector<double> u{u1};
           u.insert(u.end(), tail.begin(), tail.end());
           return breve_i_U(u, theta);
         };
       }},
      {"stepanov_s", "lambda", {-2, 2, 0.01}, -kInfinity, kInfinity, true,
       [](RunConfig&, double c) -> Evaluator {
         return [c](double l) { return stepanov_S(l, c); };
       }},
      {"legendre", "lambda", {-2, 2, 0.01}, -kInfinity, kInfinity, true,
       [](RunConfig&, double c) -> Evaluator {
         auto curve = std::make_shared<AlphaCurve>(c);
         return [curve](double l) { return curve->legendre(l); };
       }},
      {"pi", "x", {0, 4, 0.001}, 0, kInfinity, false,
       [](RunConfig&, double) -> Evaluator { return [](double x) { return pi_fn(x); }; }},
  };
  return table;
}

}  // namespace

const char* rate_function_names() {
  static const std::string names = [] {
    std::string s;
    for (const auto& f : rate_table()) s += (s.empty() ? "" : ", ") + std::string(f.name);
    return s;
  }();
  return names.c_str();
}

// ---- simulate ----------------------------------------------------------------

int cmd_simulate(RunConfig& cfg, std::ostream& log) {
  const GraphParams gp = graph_params(cfg);
  const bool direct = cfg.method == "direct";
  require(!direct || gp.n() <= kDirectSamplerLimit, "--method direct needs n <= 100000");
  require(!(direct && cfg.trace), "--trace needs --method explore");
  put_echo(cfg, "p", format_number(gp.p()));
  put_echo(cfg, "c", format_number(gp.c()));
  const OutputDir out(cfg.out);

  const auto spectra = replicate<ComponentSpectrum>(cfg.reps, cfg.seed, [&](Rng& rng, std::uint64_t) {
    return direct ? sample_direct(gp, rng) : explore_spectrum(gp, rng);
  });
  const Meta meta = cfg.meta();
  {
    auto os = out.open("spectrum.csv");
    write_meta_comment(os, meta);
    write_spectrum_summary(os, spectra);
  }
  if (cfg.rows) {
    auto os = out.open("components.csv");
    write_meta_comment(os, meta);
    write_spectrum_rows(os, spectra);
  }

  std::vector<StatSummary> summary = {
      summarize("count", column_of(spectra, [](const auto& s) { return s.count; }), cfg.seed),
      summarize("largest", column_of(spectra, [](const auto& s) { return s.largest(); }), cfg.seed),
      summarize("largest_excess",
                column_of(spectra, [](const auto& s) { return s.largest_excess(); }), cfg.seed),
      summarize("total_excess",
                column_of(spectra, [](const auto& s) { return s.total_excess(); }), cfg.seed),
  };
  write_json(out, "summary.json", meta, {{"summary", summary_json(summary)}});

  if (gp.n() <= kExactMaxN) {
    json entries = json::array();
    for (const auto& [sizes, prob] : empirical_size_law(spectra)) {
      entries.push_back({{"count", sizes.size()}, {"sizes", sizes}, {"prob", prob}});
    }
    write_json(out, "law.json", meta,
               {{"n", gp.n()}, {"p", gp.p()}, {"reps", cfg.reps}, {"entries", entries}});
  }
  if (cfg.trace) {
    Rng rng = make_rng({cfg.seed, 0});
    auto os = out.open("trace.csv");
    write_meta_comment(os, meta);
    write_trace_csv(os, explore(gp, rng));
  }
  for (const auto& s : summary) {
    log << s.statistic << " mean " << format_number(s.mean) << " stderr " << format_number(s.stderr_)
        << '\n';
  }
  return 0;
}

// ---- exact -------------------------------------------------------------------

int cmd_exact(RunConfig& cfg, std::ostream& log) {
  require(*cfg.n >= 1 && *cfg.n <= kExactMaxN, "--n must lie in [1, 8]");
  const GraphParams gp = graph_params(cfg);
  put_echo(cfg, "p", format_number(gp.p()));
  const double tol = resolve(cfg, "tol", cfg.tol, 0.005);

  std::map<SizeKey, double> empirical;
  if (!cfg.compare.empty()) {
    std::ifstream is(cfg.compare);
    json law;
    try {
      law = json::parse(is);
    } catch (const json::exception& e) {
      throw ValidationError("cannot parse " + cfg.compare + ": " + e.what());
    }
    require(law.contains("entries") && law.contains("n") && law.contains("p"),
            cfg.compare + " is not a law.json file");
    require(law["n"].get<std::int64_t>() == gp.n(), "--compare law has a different n");
    require(std::fabs(law["p"].get<double>() - gp.p()) <= 1e-12, "--compare law has a different p");
    for (const auto& e : law["entries"]) {
      empirical[e["sizes"].get<SizeKey>()] += e["prob"].get<double>();
    }
  }
  const OutputDir out(cfg.out);

  const ExactDistribution dist = enumerate_exact(static_cast<int>(gp.n()), gp.p());
  std::ostringstream ss;
  giantscope::write_json(ss, dist);
  json body = json::parse(ss.str());
  body["expected_count"] = dist.expected_count();
  body["expected_total_excess"] = dist.expected_total_excess();
  double tv = 0.0;
  if (!cfg.compare.empty()) {
    tv = tv_distance(dist.size_law(), empirical);
    body["comparison"] = {{"file", cfg.compare}, {"tv_distance", tv}, {"tol", tol}};
    log << "tv_distance " << format_number(tv) << '\n';
  }
  write_json(out, "exact.json", cfg.meta(), body);
  log << "expected_count " << format_number(dist.expected_count()) << '\n';
  if (tv > tol) throw CheckFailure("tv_distance " + format_number(tv) + " exceeds " + format_number(tol));
  return 0;
}

// ---- rates -------------------------------------------------------------------

int cmd_rates(RunConfig& cfg, std::ostream& log) {
  const auto& table = rate_table();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const RateFn& f) { return cfg.fn == f.name; });
  require(it != table.end(), "unknown --fn '" + cfg.fn + "'; expected one of " + rate_function_names());
  const RateFn& fn = *it;
  const double c = fn.needs_c ? require_c(cfg) : cfg.c.value_or(0.0);
  const GridSpec grid = resolve_grid(cfg, "grid", cfg.grid, fn.fallback);
  const auto xs = grid.points();
  for (double x : xs) {
    require(x >= fn.lo && x <= fn.hi, std::string("grid leaves the domain of ") + fn.name);
  }
  const double tol = resolve(cfg, "tol", cfg.tol, 1e-8);
  const Evaluator eval = fn.make(cfg, c);
  const OutputDir out(cfg.out);

  Table t{{fn.variable, fn.name}, {xs, {}}};
  t.columns[1].reserve(xs.size());
  for (double x : xs) t.columns[1].push_back(eval(x));

  if (std::string(fn.name) == "k_star") {
    const double r = cfg.r[0];
    std::vector<double> scan;
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      scan.push_back(k_star_scan(xs[i], r, c));
      worst = std::max(worst, std::fabs(scan.back() - t.columns[1][i]));
    }
    if (worst > tol) {
      throw CheckFailure("k_star and its grid scan differ by " + format_number(worst));
    }
    t.header.push_back("k_star_scan");
    t.columns.push_back(std::move(scan));
  }
  const Meta meta = cfg.meta();
  write_csv(out, "rates.csv", meta, t);
  if (cfg.svg) {
    Plot plot{std::string(fn.name) + (fn.needs_c ? " (c=" + format_number(c) + ")" : ""),
              fn.variable, fn.name, {{fn.name, xs, t.columns[1]}}, {}};
    write_svg(out, "rates.svg", meta, plot);
  }
  log << "wrote " << xs.size() << " rows to " << out.path("rates.csv").string() << '\n';
  return 0;
}

// ---- phase -------------------------------------------------------------------

int cmd_phase(RunConfig& cfg, std::ostream& log) {
  if (cfg.c_list.empty()) cfg.c_list = {3.0};
  std::string echo;
  for (double c : cfg.c_list) {
    require(std::isfinite(c) && c > 0.0, "--c entries must be positive");
    echo += (echo.empty() ? "" : ",") + format_number(c);
  }
  put_echo(cfg, "c", echo);
  const auto as = resolve_grid(cfg, "grid", cfg.grid, {0, 1, 0.001}).points();
  require(as.front() >= 0.0 && as.back() <= 1.0, "a grid must lie in [0, 1]");
  const auto cs = resolve_grid(cfg, "regions", cfg.regions, {2.1, 8, 0.1}).points();
  require(cs.front() > 0.0, "regions grid must be positive");

  json points = json::array();
  for (double c : cfg.c_list) {
    const PhasePoints pp = phase_points(c);
    json entry = {{"c", c}, {"a_star", pp.a_star}};
    if (c > 2.0) {
      if (!pp.a_tilde || !pp.a_hat || !pp.tau_tilde) {
        throw CheckFailure("phase points missing for c = " + format_number(c));
      }
      if (!(*pp.a_tilde < 2.0 / c)) {
        throw CheckFailure("a_tilde >= 2/c for c = " + format_number(c));
      }
      if (!(0.5 < *pp.a_hat && *pp.a_hat < pp.a_star)) {
        throw CheckFailure("a_hat outside (1/2, a*) for c = " + format_number(c));
      }
      const OneSided d = i_alpha_slopes_at_break(c);
      if (!(d.left > d.right)) {
        throw CheckFailure("no downward slope jump at a_hat for c = " + format_number(c));
      }
      entry["a_tilde"] = *pp.a_tilde;
      entry["a_hat"] = *pp.a_hat;
      entry["tau_tilde"] = *pp.tau_tilde;
      entry["slope_left"] = d.left;
      entry["slope_right"] = d.right;
    }
    points.push_back(entry);
  }

  Table curves{{"a"}, {as}};
  for (double c : cfg.c_list) {
    curves.header.push_back("i_alpha_c" + format_number(c));
    std::vector<double> col;
    col.reserve(as.size());
    for (double a : as) col.push_back(i_alpha(a, c));
    curves.columns.push_back(std::move(col));
  }
  Table regions{{"c", "a_tilde", "a_hat", "a_star"}, {cs, {}, {}, {}}};
  for (double c : cs) {
    const PhasePoints pp = phase_points(c);
    regions.columns[1].push_back(pp.a_tilde.value_or(std::nan("")));
    regions.columns[2].push_back(pp.a_hat.value_or(std::nan("")));
    regions.columns[3].push_back(pp.a_star);
  }

  const OutputDir out(cfg.out);
  const Meta meta = cfg.meta();
  write_json(out, "phase.json", meta, {{"phase_points", points}});
  write_csv(out, "i_alpha.csv", meta, curves);
  write_csv(out, "regions.csv", meta, regions);
  if (cfg.svg) {
    Plot fig1{"LDP for the number of connected components", "a", "I^alpha_c(a)", {}, {}};
    for (std::size_t j = 0; j < cfg.c_list.size(); ++j) {
      fig1.series.push_back({"c = " + format_number(cfg.c_list[j]), as, curves.columns[j + 1]});
    }
    write_svg(out, "i_alpha.svg", meta, fig1);
    Plot fig2{"Convexity-concavity regions of I^alpha_c", "c", "a",
              {{"a_tilde (convex below)", cs, regions.columns[1]},
               {"a_hat (break-up)", cs, regions.columns[2]},
               {"a_star", cs, regions.columns[3]}},
              {}};
    write_svg(out, "regions.svg", meta, fig2);
  }
  for (const auto& p : points) log << p.dump() << '\n';
  return 0;
}

// ---- traj --------------------------------------------------------------------

int cmd_traj(RunConfig& cfg, std::ostream& log) {
  const double c = require_c(cfg, 2.0);
  const double s = resolve(cfg, "s", cfg.s, 0.2);
  const double t = resolve(cfg, "t", cfg.t, 0.7);
  const double w = resolve(cfg, "w", cfg.w, 0.03);
  const double a = resolve(cfg, "a", cfg.a, 0.25);
  const double tau = resolve(cfg, "tau", cfg.tau, 0.6);
  const double theta = resolve(cfg, "theta", cfg.theta, 1.0);
  const double tol = resolve(cfg, "tol", cfg.tol, 1e-4);
  require(0.0 <= s && s < t && t <= 1.0, "need 0 <= s < t <= 1");
  require(0.0 <= w && w < 0.5 * (t - s) * (t - s), "need 0 <= w < (t - s)^2 / 2");
  require(0.0 <= a && a <= 1.0, "--a must lie in [0, 1]");
  require(0.0 <= tau && tau <= 1.0, "--tau must lie in [0, 1]");
  require(cfg.cells >= 16 && cfg.cells <= 50'000'000, "--cells must lie in [16, 5e7]");
  require(cfg.points >= 2, "--points must be >= 2");
  const OutputDir out(cfg.out);

  std::vector<Check> checks;
  const OptimalExcursion exc = optimal_excursion(s, t, w, c, cfg.cells);
  checks.push_back({"excursion I^S quadrature", exc.cost, i_S_functional(exc.path, c), tol});
  checks.push_back({"excursion area", w, exc.path.integral(), tol});
  const double d = 1e-6 * std::max(1.0, exc.rho);
  checks.push_back({"dK/drho at rho = -w", -w,
                    (k_rho(t - s, exc.rho + d) - k_rho(t - s, exc.rho - d)) / (2.0 * d), 1e-6});

  const OptimalRegulator reg = optimal_regulator(a, tau, c, cfg.cells);
  if (std::isfinite(reg.cost)) {
    checks.push_back({"regulator entropy quadrature", reg.cost, phi_entropy_integral(reg.phi, c), tol});
    checks.push_back({"regulator endpoint", a, reg.phi[reg.phi.cells()], tol});
  }

  const LlnCurves lln = lln_curves(c, cfg.cells);
  checks.push_back({"I^Phi(phibar)", 0.0, i_phi_functional(lln.phibar, c), tol});
  checks.push_back({"I^Q(qbar)", 0.0, i_Q_functional(lln.qbar, c), tol});

  const Trajectory para = optimal_excursion_critical(s, t, w, cfg.cells);
  checks.push_back({"critical parabola cost", critical_excursion_cost(s, t, w, theta),
                    i_S_critical(para, theta), 1e-6});

  const std::size_t stride = std::max<std::size_t>(1, cfg.cells / (cfg.points - 1));
  const Meta meta = cfg.meta();
  const Table exc_t{{"t", "x"}, {downsample_times(exc.path, stride), downsample_values(exc.path, stride)}};
  const Table reg_t{{"t", "phi"}, {downsample_times(reg.phi, stride), downsample_values(reg.phi, stride)}};
  const Table lln_t{{"t", "qbar", "phibar", "ebar"},
                    {downsample_times(lln.qbar, stride), downsample_values(lln.qbar, stride),
                     downsample_values(lln.phibar, stride), downsample_values(lln.ebar, stride)}};
  const Table para_t{{"t", "x"}, {downsample_times(para, stride), downsample_values(para, stride)}};
  write_csv(out, "excursion.csv", meta, exc_t);
  write_csv(out, "regulator.csv", meta, reg_t);
  write_csv(out, "lln.csv", meta, lln_t);
  write_csv(out, "critical_excursion.csv", meta, para_t);

  json report = json::array();
  bool ok = true;
  for (const auto& ch : checks) {
    report.push_back(ch.to_json());
    ok = ok && ch.pass();
    log << (ch.pass() ? "ok   " : "FAIL ") << ch.name << " error " << format_number(ch.error())
        << '\n';
  }
  write_json(out, "traj.json", meta,
             {{"excursion", {{"rho", exc.rho}, {"cost", exc.cost}}},
              {"regulator", {{"cost", reg.cost}}},
              {"checks", report}});
  if (cfg.svg) {
    Plot plot{"Optimal trajectories (c=" + format_number(c) + ")", "t", "value",
              {{"excursion", exc_t.columns[0], exc_t.columns[1]},
               {"regulator", reg_t.columns[0], reg_t.columns[1]},
               {"qbar", lln_t.columns[0], lln_t.columns[1]},
               {"phibar", lln_t.columns[0], lln_t.columns[2]}},
              {}};
    write_svg(out, "traj.svg", meta, plot);
  }
  if (!ok) throw CheckFailure("quadrature cross-check failed; see traj.json");
  return 0;
}

// ---- critical ----------------------------------------------------------------

int cmd_critical(RunConfig& cfg, std::ostream& log) {
  const double theta = resolve(cfg, "theta", cfg.theta, 0.0);
  const double dt = resolve(cfg, "dt", cfg.dt, 1e-3);
  const double horizon = resolve(cfg, "horizon", cfg.horizon, default_critical_horizon(theta));
  require(dt > 0.0 && dt <= horizon, "need 0 < dt <= horizon");
  require(horizon / dt <= 1e8, "horizon / dt is too large");
  if (cfg.n) require(*cfg.n >= 2, "--n must be >= 2");
  const double top = std::max(2.0 * std::max(theta, 0.0), 1.0) * 1.5;
  const GridSpec grid = resolve_grid(cfg, "grid", cfg.grid, {0, top, top / 1000.0});
  const auto us = grid.points();
  require(us.front() >= 0.0, "u grid must be non-negative");
  const OutputDir out(cfg.out);

  struct Longest {
    double length = 0.0;
    std::int64_t marks = 0;
    double second = 0.0;
  };
  const auto limit = replicate<Longest>(cfg.reps, cfg.seed, [&](Rng& rng, std::uint64_t) {
    const CriticalPath path = simulate_critical_limit(theta, horizon, dt, rng);
    const ExcursionSet ex = excursions(path);
    Longest l;
    if (!ex.lengths.empty()) {
      l.length = ex.lengths[0];
      l.marks = ex.marks[0];
    }
    if (ex.lengths.size() > 1) l.second = ex.lengths[1];
    return l;
  });

  Table rows{{"replication", "longest", "longest_marks", "second"}, {{}, {}, {}, {}}};
  for (std::size_t r = 0; r < limit.size(); ++r) {
    rows.columns[0].push_back(static_cast<double>(r));
    rows.columns[1].push_back(limit[r].length);
    rows.columns[2].push_back(static_cast<double>(limit[r].marks));
    rows.columns[3].push_back(limit[r].second);
  }
  std::vector<double> cubes;
  for (double l : rows.columns[1]) cubes.push_back(l * l * l / 12.0);
  std::vector<StatSummary> summary = {
      summarize("longest", rows.columns[1], cfg.seed),
      summarize("longest_marks", rows.columns[2], cfg.seed),
      summarize("longest_cubed_over_12", cubes, cfg.seed),
      summarize("second", rows.columns[3], cfg.seed),
  };
  json body = {{"summary", nullptr}};

  if (cfg.n) {
    const std::uint64_t graph_seed = mix64(cfg.seed);
    const auto graph = replicate<CriticalSample>(cfg.reps, graph_seed, [&](Rng& rng, std::uint64_t) {
      return critical_exploration_sample(*cfg.n, theta, rng);
    });
    rows.header.insert(rows.header.end(), {"graph_largest_scaled", "graph_largest_excess"});
    rows.columns.push_back(column_of(graph, [](const CriticalSample& g) { return g.largest; }));
    rows.columns.push_back(column_of(graph, [](const CriticalSample& g) { return g.excess; }));
    summary.push_back(summarize("graph_largest_scaled", rows.columns[4], graph_seed));
    summary.push_back(summarize("graph_largest_excess", rows.columns[5], graph_seed));
    const double ks = ks_distance(rows.columns[1], rows.columns[4]);
    body["ks_distance"] = ks;
    log << "ks_distance " << format_number(ks) << '\n';
  }
  body["summary"] = summary_json(summary);
  body["marks_ratio"] = summary[1].mean / summary[2].mean;

  Table curve{{"u", "breve_i_beta"}, {us, {}}};
  for (double u : us) curve.columns[1].push_back(breve_i_beta(u, theta));

  const Meta meta = cfg.meta();
  write_csv(out, "critical.csv", meta, rows);
  write_csv(out, "breve_i_beta.csv", meta, curve);
  write_json(out, "critical.json", meta, body);
  if (cfg.svg) {
    Plot fig3{"Moderate deviations of the largest critical component (theta=" +
                  format_number(theta) + ")",
              "u", "I^beta", {{"I^beta", us, curve.columns[1]}}, {}};
    if (theta > 0.0) {
      for (int k = 1; k <= 4; ++k) {
        fig3.markers.push_back({theta / (k + 0.5), "k=" + std::to_string(k)});
      }
      fig3.markers.push_back({2.0 * theta, "2 theta"});
    }
    write_svg(out, "breve_i_beta.svg", meta, fig3);
  }
  log << "mean longest " << format_number(summary[0].mean) << " marks ratio "
      << format_number(body["marks_ratio"].get<double>()) << '\n';
  return 0;
}

// ---- clt-check ---------------------------------------------------------------

int cmd_clt_check(RunConfig& cfg, std::ostream& log) {
  const double c = require_c(cfg, 2.0);
  require(c > 1.0, "clt-check needs c > 1");
  const std::int64_t n = cfg.n.value_or(100000);
  require(n >= 10, "--n must be >= 10");
  put_echo(cfg, "n", std::to_string(n));
  const OutputDir out(cfg.out);

  const LlnConstants lln = lln_constants(c);
  const double sn = std::sqrt(static_cast<double>(n));
  const double nd = static_cast<double>(n);
  const GraphParams gp(n, c);
  const auto samples = replicate<std::array<double, 3>>(cfg.reps, cfg.seed, [&](Rng& rng, std::uint64_t) {
    const ComponentSpectrum s = explore_spectrum(gp, rng);
    return std::array<double, 3>{sn * (static_cast<double>(s.count) / nd - lln.alpha),
                                 sn * (static_cast<double>(s.largest()) / nd - lln.beta),
                                 sn * (static_cast<double>(s.largest_excess()) / nd - lln.gamma)};
  });
  const LimitParams theory = clt_params(c, 0.0);
  const char* names[] = {"alpha", "beta", "gamma"};
  Table rows{{"replication", "alpha", "beta", "gamma"}, {{}, {}, {}, {}}};
  for (std::size_t r = 0; r < samples.size(); ++r) {
    rows.columns[0].push_back(static_cast<double>(r));
    for (int j = 0; j < 3; ++j) rows.columns[j + 1].push_back(samples[r][j]);
  }
  json stats = json::array();
  std::vector<StatSummary> summary;
  for (int j = 0; j < 3; ++j) {
    summary.push_back(summarize(names[j], rows.columns[j + 1], cfg.seed));
    const auto& s = summary.back();
    stats.push_back({{"statistic", names[j]},
                     {"mean", s.mean},
                     {"stderr", s.stderr_},
                     {"theory_mean", theory.mean(j)},
                     {"z", s.stderr_ > 0 ? (s.mean - theory.mean(j)) / s.stderr_ : 0.0},
                     {"var", s.var},
                     {"theory_var", theory.cov(j, j)},
                     {"var_rel_error", s.var / theory.cov(j, j) - 1.0}});
    log << names[j] << " mean " << format_number(s.mean) << " var " << format_number(s.var)
        << " theory var " << format_number(theory.cov(j, j)) << '\n';
  }
  const double corr = sample_covariance(rows.columns[1], rows.columns[2]) /
                      std::sqrt(summary[0].var * summary[1].var);
  const double theory_corr = theory.cov(0, 1) / std::sqrt(theory.cov(0, 0) * theory.cov(1, 1));
  log << "corr(alpha, beta) " << format_number(corr) << " theory " << format_number(theory_corr)
      << '\n';

  const Meta meta = cfg.meta();
  write_csv(out, "clt_samples.csv", meta, rows);
  write_json(out, "clt.json", meta,
             {{"statistics", stats},
              {"corr_alpha_beta", corr},
              {"theory_corr_alpha_beta", theory_corr},
              {"summary", summary_json(summary)}});
  return 0;
}

// ---- beta-ldp ----------------------------------------------------------------

int cmd_beta_ldp(RunConfig& cfg, std::ostream& log) {
  const double c = require_c(cfg, 3.0);
  const auto us = resolve_grid(cfg, "grid", cfg.grid, {0, 1, 0.001}).points();
  require(us.front() >= 0.0 && us.back() <= 1.0, "u grid must lie in [0, 1]");
  const double tol = resolve(cfg, "tol", cfg.tol, 1e-10);

  Table t{{"u", "i_beta", "i_beta_oconnell", "k"}, {us, {}, {}, {}}};
  double worst = 0.0;
  for (double u : us) {
    const double v = i_beta(u, c);
    t.columns[1].push_back(v);
    if (c > 1.0 && u > 0.0) {
      const OConnell oc = i_beta_oconnell(u, c);
      t.columns[2].push_back(oc.value);
      t.columns[3].push_back(oc.k);
      worst = std::max(worst, std::fabs(oc.value - v));
    } else {
      t.columns[2].push_back(std::nan(""));
      t.columns[3].push_back(std::nan(""));
    }
  }
  if (worst > tol) {
    throw CheckFailure("floor formula and alternative form differ by " + format_number(worst));
  }
  const OutputDir out(cfg.out);
  const Meta meta = cfg.meta();
  write_csv(out, "beta_ldp.csv", meta, t);
  if (cfg.svg) {
    Plot fig4{"Large deviations of the largest component of G(n," + format_number(c) + "/n)", "u",
              "I^beta_c(u)", {{"I^beta", us, t.columns[1]}}, {}};
    if (c > 1.0) {
      for (int k = 1; k <= 4; ++k) fig4.markers.push_back({oconnell_x(k, c), "x_" + std::to_string(k)});
    }
    write_svg(out, "beta_ldp.svg", meta, fig4);
  }
  log << "max |floor - alternative| " << format_number(worst) << '\n';
  return 0;
}

}  // namespace giantscope::cli
