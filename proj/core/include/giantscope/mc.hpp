#pragma once

// Deterministic Monte Carlo replication. Replication r always draws from the
// stream (master, r), results are stored by index and reduced in index
// order, so the output does not depend on the number of workers.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "giantscope/random.hpp"

namespace giantscope {

/// Worker count: GIANTSCOPE_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_limit();

/// Runs fn(rng, r) for r = 0..reps-1 with rng seeded from (master, r).
template <class T, class F>
std::vector<T> replicate(std::uint64_t reps, std::uint64_t master, F&& fn, unsigned threads = 0) {
  std::vector<T> out(reps);
  const unsigned workers = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads ? threads : worker_limit(), reps)));
  std::atomic<std::uint64_t> cursor{0};
  auto work = [&] {
    for (std::uint64_t r = cursor++; r < reps; r = cursor++) {
      Rng rng = make_rng({master, r});
      out[r] = fn(rng, r);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

struct StatSummary {
  std::string statistic;
  double mean = 0.0;
  double var = 0.0;  ///< unbiased sample variance; 0 for a single replication
  double stderr_ = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
};

/// Summarizes one column of per-replication values.
StatSummary summarize(const std::string& name, const std::vector<double>& values,
                      std::uint64_t seed);

/// Sample covariance of two aligned columns.
double sample_covariance(const std::vector<double>& x, const std::vector<double>& y);

using Estimator = std::function<std::vector<double>(Rng&, std::uint64_t)>;

struct McResult {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  ///< columns[stat][replication]
  std::vector<StatSummary> summary;
};

/// Evaluates an estimator returning one value per named statistic.
McResult mc_harness(const std::vector<std::string>& names, const Estimator& estimator,
                    std::uint64_t reps, std::uint64_t master_seed, unsigned threads = 0);

/// [{statistic, mean, var, stderr, reps, seed}, ...]
void write_summary_json(std::ostream& os, const std::vector<StatSummary>& summary);

}  // namespace giantscope
