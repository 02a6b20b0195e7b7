#pragma once

// Exact law of the component statistics of G(n, p) for n <= 8, obtained by
// enumerating every edge subset of K_n.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "giantscope/exploration.hpp"

namespace giantscope {

inline constexpr int kExactMaxN = 8;

/// Multiset of (size, excess) pairs, stored in non-increasing order.
struct SpectrumKey {
  std::vector<std::pair<std::int64_t, std::int64_t>> parts;

  std::int64_t count() const noexcept { return static_cast<std::int64_t>(parts.size()); }
  std::vector<std::int64_t> sizes() const;
  std::int64_t largest() const noexcept { return parts.empty() ? 0 : parts.front().first; }
  std::int64_t total_excess() const noexcept;

  static SpectrumKey from(const ComponentSpectrum& spectrum);

  friend auto operator<=>(const SpectrumKey&, const SpectrumKey&) = default;
};

/// Sorted component sizes, the key of the (count, sizes) marginal.
using SizeKey = std::vector<std::int64_t>;

class ExactDistribution {
 public:
  ExactDistribution(int n, double p, std::map<SpectrumKey, double> table);

  int n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  const std::map<SpectrumKey, double>& table() const noexcept { return table_; }

  double total() const;
  std::map<SizeKey, double> size_law() const;
  std::map<std::int64_t, double> count_law() const;
  std::map<std::int64_t, double> largest_law() const;
  double expected_count() const;
  double expected_total_excess() const;

 private:
  int n_;
  double p_;
  std::map<SpectrumKey, double> table_;
};

/// Thrown for n outside [1, kExactMaxN].
class CapacityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Enumerates all 2^(n(n-1)/2) graphs. Work is split over threads by the
/// neighbour sets of the first vertices; integer counts per (key, edges) are
/// merged, so the result does not depend on the split.
ExactDistribution enumerate_exact(int n, double p, unsigned threads = 0);

/// sum_{k=1}^n P(Q_k = 0) from an exact forward pass over the law of the
/// exploration queue; equals E[count].
double expected_count_exploration(int n, double p);

/// Empirical (count, sorted sizes) law of a batch of spectra.
std::map<SizeKey, double> empirical_size_law(const std::vector<ComponentSpectrum>& spectra);

/// Half the L1 distance over the union of supports.
template <class Key>
double tv_distance(const std::map<Key, double>& d1, const std::map<Key, double>& d2) {
  std::set<Key> keys;
  for (const auto& [k, _] : d1) keys.insert(k);
  for (const auto& [k, _] : d2) keys.insert(k);
  double sum = 0.0;
  for (const auto& k : keys) {
    const auto a = d1.find(k);
    const auto b = d2.find(k);
    const double pa = a == d1.end() ? 0.0 : a->second;
    const double pb = b == d2.end() ? 0.0 : b->second;
    sum += std::fabs(pa - pb);
  }
  return 0.5 * sum;
}

/// {n, p, entries:[{count, sizes:[..], excess:[..], prob}]}
void write_json(std::ostream& os, const ExactDistribution& dist);

}  // namespace giantscope
