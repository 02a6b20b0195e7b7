#include "giantscope/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "giantscope/numerics.hpp"

namespace giantscope {

unsigned worker_limit() {
  if (const char* env = std::getenv("GIANTSCOPE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

StatSummary summarize(const std::string& name, const std::vector<double>& values,
                      std::uint64_t seed) {
  StatSummary s;
  s.statistic = name;
  s.reps = values.size();
  s.seed = seed;
  if (values.empty()) return s;
  numerics::CompensatedSum sum;
  for (double v : values) sum += v;
  s.mean = sum.value() / static_cast<double>(values.size());
  if (values.size() > 1) {
    numerics::CompensatedSum sq;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.var = sq.value() / static_cast<double>(values.size() - 1);
  }
  s.stderr_ = std::sqrt(s.var / static_cast<double>(values.size()));
  return s;
}

double sample_covariance(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("sample_covariance: need two aligned columns of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  numerics::CompensatedSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  numerics::CompensatedSum sxy;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my);
  return sxy.value() / (n - 1.0);
}

McResult mc_harness(const std::vector<std::string>& names, const Estimator& estimator,
                    std::uint64_t reps, std::uint64_t master_seed, unsigned threads) {
  if (reps < 1) throw std::invalid_argument("mc_harness: reps must be >= 1");
  auto rows = replicate<std::vector<double>>(
      reps, master_seed, [&](Rng& rng, std::uint64_t r) { return estimator(rng, r); }, threads);
  McResult result;
  result.names = names;
  result.columns.assign(names.size(), std::vector<double>(reps));
  for (std::uint64_t r = 0; r < reps; ++r) {
    if (rows[r].size() != names.size()) {
      throw std::invalid_argument("mc_harness: estimator returned the wrong number of values");
    }
    for (std::size_t j = 0; j < names.size(); ++j) result.columns[j][r] = rows[r][j];
  }
  for (std::size_t j = 0; j < names.size(); ++j) {
    result.summary.push_back(summarize(names[j], result.columns[j], master_seed));
  }
  return result;
}

void write_summary_json(std::ostream& os, const std::vector<StatSummary>& summary) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json j;
    j["statistic"] = s.statistic;
    j["mean"] = s.mean;
    j["var"] = s.var;
    j["stderr"] = s.stderr_;
    j["reps"] = s.reps;
    j["seed"] = s.seed;
    arr.push_back(std::move(j));
  }
  os << arr.dump(2) << '\n';
}

}  // namespace giantscope
