#pragma once

#include <cstdint>
#include <random>

namespace giantscope {

/// Identifies one random stream: a master seed and a replication index.
struct RngSeed {
  std::uint64_t master = 0;
  std::uint64_t replication = 0;
};

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-replication stream seed: mix64(mix64(master) ^ mix64(~replication)).
/// Pure function of (master, replication); stable for a given build.
constexpr std::uint64_t stream_seed(RngSeed seed) noexcept {
  return mix64(mix64(seed.master) ^ mix64(~seed.replication));
}

inline Rng make_rng(RngSeed seed) { return Rng(stream_seed(seed)); }

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Exact Binomial(trials, p) draw. Small means use sequential inversion of the
/// pmf; large means defer to std::binomial_distribution (exact rejection).
std::int64_t sample_binomial(Rng& rng, std::int64_t trials, double p);

/// Bernoulli(p) draw.
inline bool sample_bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

/// Poisson(mean) draw; mean <= 0 yields 0.
std::int64_t sample_poisson(Rng& rng, double mean);

}  // namespace giantscope
