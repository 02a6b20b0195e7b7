#pragma once

// Vertex-saturation construction of G(n, c/n). One vertex is saturated per
// step; the queue Q of generated-but-unsaturated vertices hits zero exactly
// when a connected component has been fully explored, so components are the
// gaps between successive zeros of Q and their excess edges are the
// increments of E over those gaps.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "giantscope/random.hpp"

namespace giantscope {

/// Validated (n, c) pair with p = c/n clamped to [0, 1].
class GraphParams {
 public:
  /// Throws std::invalid_argument unless n >= 1 and c >= 0.
  GraphParams(std::int64_t n, double c);

  /// Parameters for a given edge probability p in [0, 1] (c = n p).
  static GraphParams with_probability(std::int64_t n, double p);

  std::int64_t n() const noexcept { return n_; }
  double c() const noexcept { return c_; }
  double p() const noexcept { return p_; }

 private:
  std::int64_t n_;
  double c_;
  double p_;
};

/// Full sample path of the exploration, indices 0..n.
struct ExplorationTrace {
  std::vector<std::int64_t> v;    ///< generated vertices V_i
  std::vector<std::int64_t> q;    ///< generated, not saturated: Q_i = V_i - i
  std::vector<std::int64_t> e;    ///< cumulative excess edges E_i
  std::vector<std::int64_t> phi;  ///< number of k <= i with Q_k = 0
  std::vector<std::int64_t> s;    ///< centered walk S_i (restart steps include the spare coin)
  std::vector<std::int64_t> eps;  ///< correction with Q_i = S_i + eps_i + phi_i

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(v.size()) - 1; }

  /// Throws std::invalid_argument if any structural invariant fails.
  void validate() const;
};

/// Component sizes in non-increasing order with aligned excess-edge counts.
struct ComponentSpectrum {
  std::vector<std::int64_t> sizes;
  std::vector<std::int64_t> excess;
  std::int64_t count = 0;

  std::int64_t largest() const noexcept { return sizes.empty() ? 0 : sizes.front(); }
  std::int64_t largest_excess() const noexcept { return excess.empty() ? 0 : excess.front(); }
  std::int64_t total_excess() const noexcept;

  friend bool operator==(const ComponentSpectrum&, const ComponentSpectrum&) = default;
};

/// Runs the exploration recursion with exact binomial increments.
ExplorationTrace explore(const GraphParams& params, RngSeed seed);
ExplorationTrace explore(const GraphParams& params, Rng& rng);

/// Same random draws as explore(), but keeps only the component spectrum.
/// Used by the Monte Carlo drivers to avoid materializing 6 arrays per run.
ComponentSpectrum explore_spectrum(const GraphParams& params, Rng& rng);

/// Reads components off the zeros of q. Validates the trace first.
ComponentSpectrum components(const ExplorationTrace& trace);

/// Largest n accepted by sample_direct (quadratic edge enumeration).
inline constexpr std::int64_t kDirectSamplerLimit = 100000;

/// Independent validator: draws every edge of K_n (geometric skipping, exact),
/// merges with union-find and counts excess = edges - (size - 1).
ComponentSpectrum sample_direct(const GraphParams& params, RngSeed seed);
ComponentSpectrum sample_direct(const GraphParams& params, Rng& rng);

using EdgeList = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// The raw edge set behind sample_direct: each pair i < j is present
/// independently with probability p.
EdgeList sample_edges(const GraphParams& params, Rng& rng);

/// Component spectrum of an explicit edge list on vertices 0..n-1.
ComponentSpectrum spectrum_from_edges(std::int64_t n,
                                      const EdgeList& edges);

/// CSV with header i,v,q,e,phi,s.
void write_trace_csv(std::ostream& os, const ExplorationTrace& trace);

/// CSV with header replication,rank,size,excess.
void write_spectrum_rows(std::ostream& os, const std::vector<ComponentSpectrum>& spectra);

/// CSV with header replication,count,largest,largest_excess.
void write_spectrum_summary(std::ostream& os, const std::vector<ComponentSpectrum>& spectra);

}  // namespace giantscope
