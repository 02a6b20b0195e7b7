#include "giantscope/exact_oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <ostream>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "giantscope/mc.hpp"
#include "giantscope/numerics.hpp"

namespace giantscope {

std::vector<std::int64_t> SpectrumKey::sizes() const {
  std::vector<std::int64_t> out;
  out.reserve(parts.size());
  for (const auto& [s, _] : parts) out.push_back(s);
  return out;
}

std::int64_t SpectrumKey::total_excess() const noexcept {
  std::int64_t sum = 0;
  for (const auto& [_, e] : parts) sum += e;
  return sum;
}

SpectrumKey SpectrumKey::from(const ComponentSpectrum& spectrum) {
  SpectrumKey key;
  key.parts.reserve(spectrum.sizes.size());
  for (std::size_t k = 0; k < spectrum.sizes.size(); ++k) {
    key.parts.emplace_back(spectrum.sizes[k], spectrum.excess[k]);
  }
  std::sort(key.parts.begin(), key.parts.end(), std::greater<>());
  return key;
}

ExactDistribution::ExactDistribution(int n, double p, std::map<SpectrumKey, double> table)
    : n_(n), p_(p), table_(std::move(table)) {}

double ExactDistribution::total() const {
  numerics::CompensatedSum sum;
  for (const auto& [_, prob] : table_) sum += prob;
  return sum.value();
}

std::map<SizeKey, double> ExactDistribution::size_law() const {
  std::map<SizeKey, double> out;
  for (const auto& [key, prob] : table_) out[key.sizes()] += prob;
  return out;
}

std::map<std::int64_t, double> ExactDistribution::count_law() const {
  std::map<std::int64_t, double> out;
  for (const auto& [key, prob] : table_) out[key.count()] += prob;
  return out;
}

std::map<std::int64_t, double> ExactDistribution::largest_law() const {
  std::map<std::int64_t, double> out;
  for (const auto& [key, prob] : table_) out[key.largest()] += prob;
  return out;
}

double ExactDistribution::expected_count() const {
  numerics::CompensatedSum sum;
  for (const auto& [key, prob] : table_) sum += static_cast<double>(key.count()) * prob;
  return sum.value();
}

double ExactDistribution::expected_total_excess() const {
  numerics::CompensatedSum sum;
  for (const auto& [key, prob] : table_) sum += static_cast<double>(key.total_excess()) * prob;
  return sum.value();
}

namespace {

// A part packs (size, excess) as size * 32 + excess; n <= 8 keeps excess <= 21.
using Code = std::array<std::uint16_t, kExactMaxN>;
using CountTable = std::map<Code, std::vector<std::uint64_t>>;

struct Forest {
  std::array<std::uint8_t, kExactMaxN> label{};
  std::array<std::uint8_t, kExactMaxN> size{};
  std::array<std::uint8_t, kExactMaxN> excess{};
  int components = 0;
  int edges = 0;
};

// Attaches vertex v with neighbour set `mask` (bits over 0..v-1).
Forest attach(const Forest& f, int v, unsigned mask) {
  Forest g = f;
  std::uint8_t hit[kExactMaxN] = {};
  int degree = 0;
  int distinct = 0;
  int merged_size = 1;
  int merged_excess = 0;
  for (int w = 0; w < v; ++w) {
    if (!(mask >> w & 1u)) continue;
    ++degree;
    const int c = f.label[w];
    if (!hit[c]) {
      hit[c] = 1;
      ++distinct;
      merged_size += f.size[c];
      merged_excess += f.excess[c];
    }
  }
  merged_excess += degree - distinct;
  g.edges += degree;
  // Renumber: untouched components keep their relative order, the merged one goes last.
  std::uint8_t remap[kExactMaxN] = {};
  int next = 0;
  for (int c = 0; c < f.components; ++c) {
    if (!hit[c]) {
      remap[c] = static_cast<std::uint8_t>(next);
      g.size[next] = f.size[c];
      g.excess[next] = f.excess[c];
      ++next;
    }
  }
  const auto merged = static_cast<std::uint8_t>(next);
  for (int c = 0; c < f.components; ++c) {
    if (hit[c]) remap[c] = merged;
  }
  g.size[merged] = static_cast<std::uint8_t>(merged_size);
  g.excess[merged] = static_cast<std::uint8_t>(merged_excess);
  g.components = next + 1;
  for (int w = 0; w < v; ++w) g.label[w] = remap[f.label[w]];
  g.label[v] = merged;
  return g;
}

void record(const Forest& f, int edge_total, CountTable& table) {
  Code code{};
  for (int c = 0; c < f.components; ++c) {
    code[c] = static_cast<std::uint16_t>(f.size[c] * 32 + f.excess[c]);
  }
  std::sort(code.begin(), code.begin() + f.components, std::greater<>());
  auto& row = table[code];
  if (row.empty()) row.assign(edge_total + 1, 0);
  ++row[f.edges];
}

void descend(const Forest& f, int v, int n, int edge_total, CountTable& table) {
  if (v == n) {
    record(f, edge_total, table);
    return;
  }
  const unsigned limit = 1u << v;
  for (unsigned mask = 0; mask < limit; ++mask) {
    descend(attach(f, v, mask), v + 1, n, edge_total, table);
  }
}

// Prefix of the recursion that fixes the neighbour sets of vertices 1..depth.
std::vector<Forest> prefixes(int n, int depth) {
  Forest root;
  root.components = 1;
  root.size[0] = 1;
  std::vector<Forest> level{root};
  for (int v = 1; v <= depth && v < n; ++v) {
    std::vector<Forest> next;
    next.reserve(level.size() << v);
    for (const auto& f : level) {
      for (unsigned mask = 0; mask < (1u << v); ++mask) next.push_back(attach(f, v, mask));
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace

ExactDistribution enumerate_exact(int n, double p, unsigned threads) {
  if (n < 1 || n > kExactMaxN) {
    throw CapacityError("enumerate_exact: n must lie in [1, " + std::to_string(kExactMaxN) + "]");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("enumerate_exact: p must lie in [0, 1]");
  const int edge_total = n * (n - 1) / 2;
  const int depth = std::min(n - 1, 3);
  const std::vector<Forest> tasks = prefixes(n, depth);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads ? threads : worker_limit(), tasks.size()));

  std::vector<CountTable> partial(workers);
  std::atomic<std::size_t> cursor{0};
  auto work = [&](unsigned id) {
    for (std::size_t t = cursor++; t < tasks.size(); t = cursor++) {
      descend(tasks[t], depth + 1, n, edge_total, partial[id]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  CountTable counts;
  for (auto& part : partial) {
    for (auto& [code, row] : part) {
      auto& dst = counts[code];
      if (dst.empty()) dst.assign(row.size(), 0);
      for (std::size_t k = 0; k < row.size(); ++k) dst[k] += row[k];
    }
  }

  std::map<SpectrumKey, double> table;
  const long double lp = p;
  const long double lq = 1.0L - lp;
  for (const auto& [code, row] : counts) {
    SpectrumKey key;
    for (std::uint16_t c : code) {
      if (c == 0) break;
      key.parts.emplace_back(c / 32, c % 32);
    }
    // Neumaier summation in long double.
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] == 0) continue;
      const long double w = static_cast<long double>(row[k]) * std::pow(lp, static_cast<int>(k)) *
                            std::pow(lq, edge_total - static_cast<int>(k));
      const long double t = sum + w;
      carry += (std::fabs(sum) >= std::fabs(w)) ? (sum - t) + w : (w - t) + sum;
      sum = t;
    }
    const double prob = static_cast<double>(sum + carry);
    if (prob > 0.0) table.emplace(std::move(key), prob);
  }
  return ExactDistribution(n, p, std::move(table));
}

double expected_count_exploration(int n, double p) {
  if (n < 1) throw std::invalid_argument("expected_count_exploration: n must be >= 1");
  // law[q] = P(Q_{i-1} = q)
  std::vector<long double> law(n + 1, 0.0L);
  law[0] = 1.0L;
  std::vector<std::vector<long double>> pmf_cache(n + 1);
  auto pmf = [&](int trials) -> const std::vector<long double>& {
    auto& row = pmf_cache[trials];
    if (row.empty()) {
      row.assign(trials + 1, 0.0L);
      long double c = 1.0L;
      for (int k = 0; k <= trials; ++k) {
        row[k] = c * std::pow(static_cast<long double>(p), k) *
                 std::pow(1.0L - static_cast<long double>(p), trials - k);
        c = c * (trials - k) / (k + 1);
      }
    }
    return row;
  };
  long double expected = 0.0L;
  for (int i = 1; i <= n; ++i) {
    std::vector<long double> next(n + 1, 0.0L);
    for (int q = 0; q <= n; ++q) {
      if (law[q] == 0.0L) continue;
      if (q > 0) {
        const int trials = n - q - (i - 1);
        const auto& row = pmf(std::max(trials, 0));
        for (int g = 0; g < static_cast<int>(row.size()); ++g) next[q + g - 1] += law[q] * row[g];
      } else {
        const auto& row = pmf(n - i);
        for (int g = 0; g < static_cast<int>(row.size()); ++g) next[g] += law[q] * row[g];
      }
    }
    law = std::move(next);
    expected += law[0];
  }
  return static_cast<double>(expected);
}

std::map<SizeKey, double> empirical_size_law(const std::vector<ComponentSpectrum>& spectra) {
  std::map<SizeKey, std::uint64_t> counts;
  for (const auto& s : spectra) ++counts[s.sizes];
  std::map<SizeKey, double> law;
  const double total = static_cast<double>(spectra.size());
  for (const auto& [k, c] : counts) law.emplace(k, static_cast<double>(c) / total);
  return law;
}

void write_json(std::ostream& os, const ExactDistribution& dist) {
  nlohmann::ordered_json out;
  out["n"] = dist.n();
  out["p"] = dist.p();
  auto& entries = out["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, prob] : dist.table()) {
    nlohmann::ordered_json e;
    e["count"] = key.count();
    std::vector<std::int64_t> excess;
    for (const auto& [_, x] : key.parts) excess.push_back(x);
    e["sizes"] = key.sizes();
    e["excess"] = excess;
    e["prob"] = prob;
    entries.push_back(std::move(e));
  }
  os << out.dump(2) << '\n';
}

}  // namespace giantscope
