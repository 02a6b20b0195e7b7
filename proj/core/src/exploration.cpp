#include "giantscope/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace giantscope {

GraphParams::GraphParams(std::int64_t n, double c) : n_(n), c_(c), p_(0.0) {
  if (n < 1) throw std::invalid_argument("GraphParams: n must be >= 1");
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("GraphParams: c must be a finite non-negative number");
  }
  p_ = std::clamp(c / static_cast<double>(n), 0.0, 1.0);
}

GraphParams GraphParams::with_probability(std::int64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("GraphParams: p must lie in [0, 1]");
  GraphParams params(n, p * static_cast<double>(n));
  params.p_ = p;
  return params;
}

std::int64_t ComponentSpectrum::total_excess() const noexcept {
  return std::accumulate(excess.begin(), excess.end(), std::int64_t{0});
}

namespace {

// One step of the recursion. `generated` is the number of new vertices
// joined at step i, `spare` the extra coin that completes S on restarts.
struct Step {
  std::int64_t q;
  std::int64_t generated;
  std::int64_t excess;
  std::int64_t spare;
};

inline Step step(std::int64_t n, std::int64_t i, std::int64_t q_prev, double p, Rng& rng) {
  Step st{};
  if (q_prev > 0) {
    st.generated = sample_binomial(rng, n - q_prev - (i - 1), p);
    st.q = q_prev + st.generated - 1;
    st.spare = 0;
  } else {
    st.generated = sample_binomial(rng, n - i, p);
    st.q = st.generated;
    st.spare = sample_bernoulli(rng, p) ? 1 : 0;
  }
  st.excess = sample_binomial(rng, std::max<std::int64_t>(q_prev - 1, 0), p);
  return st;
}

void sort_spectrum(ComponentSpectrum& spec) {
  std::vector<std::pair<std::int64_t, std::int64_t>> parts(spec.sizes.size());
  for (std::size_t k = 0; k < parts.size(); ++k) parts[k] = {spec.sizes[k], spec.excess[k]};
  std::sort(parts.begin(), parts.end(), std::greater<>());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    spec.sizes[k] = parts[k].first;
    spec.excess[k] = parts[k].second;
  }
  spec.count = static_cast<std::int64_t>(parts.size());
}

}  // namespace

ExplorationTrace explore(const GraphParams& params, RngSeed seed) {
  Rng rng = make_rng(seed);
  return explore(params, rng);
}

ExplorationTrace explore(const GraphParams& params, Rng& rng) {
  const std::int64_t n = params.n();
  const double p = params.p();
  ExplorationTrace tr;
  for (auto* a : {&tr.v, &tr.q, &tr.e, &tr.phi, &tr.s, &tr.eps}) a->assign(n + 1, 0);
  std::int64_t spares = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::int64_t q_prev = tr.q[i - 1];
    const Step st = step(n, i, q_prev, p, rng);
    tr.q[i] = st.q;
    tr.v[i] = st.q + i;
    tr.e[i] = tr.e[i - 1] + st.excess;
    tr.phi[i] = tr.phi[i - 1] + (st.q == 0 ? 1 : 0);
    tr.s[i] = tr.s[i - 1] + st.generated + st.spare - 1;
    spares += st.spare;
    tr.eps[i] = (st.q > 0 ? 1 : 0) - spares;
  }
  return tr;
}

ComponentSpectrum explore_spectrum(const GraphParams& params, Rng& rng) {
  const std::int64_t n = params.n();
  const double p = params.p();
  ComponentSpectrum spec;
  std::int64_t q = 0;
  std::int64_t last_zero = 0;
  std::int64_t excess_since = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const Step st = step(n, i, q, p, rng);
    q = st.q;
    excess_since += st.excess;
    if (q == 0) {
      spec.sizes.push_back(i - last_zero);
      spec.excess.push_back(excess_since);
      last_zero = i;
      excess_since = 0;
    }
  }
  sort_spectrum(spec);
  return spec;
}

void ExplorationTrace::validate() const {
  const std::size_t len = v.size();
  if (len < 2) throw std::invalid_argument("trace: needs n >= 1");
  for (const auto* a : {&q, &e, &phi, &s}) {
    if (a->size() != len) throw std::invalid_argument("trace: array lengths differ");
  }
  if (!eps.empty() && eps.size() != len) throw std::invalid_argument("trace: eps length");
  if (v[0] != 0 || q[0] != 0 || e[0] != 0 || phi[0] != 0 || s[0] != 0) {
    throw std::invalid_argument("trace: index 0 must be all zeros");
  }
  const std::int64_t n = static_cast<std::int64_t>(len) - 1;
  if (v[n] != n) throw std::invalid_argument("trace: v_n must equal n");
  for (std::int64_t i = 1; i <= n; ++i) {
    if (q[i] < 0) throw std::invalid_argument("trace: q must be non-negative");
    if (q[i] != v[i] - i) throw std::invalid_argument("trace: q_i != v_i - i");
    if (v[i] > n) throw std::invalid_argument("trace: v exceeds n");
    if (q[i - 1] > 0 && q[i] < q[i - 1] - 1) {
      throw std::invalid_argument("trace: q drops by more than one");
    }
    if (e[i] < e[i - 1]) throw std::invalid_argument("trace: e must be non-decreasing");
    if (phi[i] != phi[i - 1] + (q[i] == 0 ? 1 : 0)) {
      throw std::invalid_argument("trace: phi must count zeros of q");
    }
  }
}

ComponentSpectrum components(const ExplorationTrace& trace) {
  trace.validate();
  ComponentSpectrum spec;
  const std::int64_t n = trace.n();
  std::int64_t last_zero = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    if (trace.q[i] == 0) {
      spec.sizes.push_back(i - last_zero);
      spec.excess.push_back(trace.e[i] - trace.e[last_zero]);
      last_zero = i;
    }
  }
  sort_spectrum(spec);
  if (spec.count != trace.phi[n]) throw std::invalid_argument("trace: count != phi_n");
  return spec;
}

EdgeList sample_edges(const GraphParams& params, Rng& rng) {
  const std::int64_t n = params.n();
  const double p = params.p();
  EdgeList edges;
  if (p <= 0.0 || n < 2) return edges;
  if (p >= 1.0) {
    edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (std::int64_t j = 1; j < n; ++j) {
      for (std::int64_t i = 0; i < j; ++i) edges.emplace_back(i, j);
    }
    return edges;
  }
  // Geometric skipping over the pairs (w, v), w < v, in column order.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = uniform01(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(w, v);
  }
  return edges;
}

ComponentSpectrum spectrum_from_edges(std::int64_t n, const EdgeList& edges) {
  std::vector<std::int64_t> parent(static_cast<std::size_t>(n));
  std::vector<std::int64_t> rank(static_cast<std::size_t>(n), 0);
  std::iota(parent.begin(), parent.end(), std::int64_t{0});
  auto find = [&parent](std::int64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      throw std::invalid_argument("spectrum_from_edges: bad edge");
    }
    std::int64_t ra = find(a);
    std::int64_t rb = find(b);
    if (ra == rb) continue;
    if (rank[ra] < rank[rb]) std::swap(ra, rb);
    parent[rb] = ra;
    if (rank[ra] == rank[rb]) ++rank[ra];
  }
  std::vector<std::int64_t> size(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> edge_count(static_cast<std::size_t>(n), 0);
  for (std::int64_t x = 0; x < n; ++x) ++size[find(x)];
  for (const auto& [a, b] : edges) ++edge_count[find(a)];
  ComponentSpectrum spec;
  for (std::int64_t x = 0; x < n; ++x) {
    if (size[x] == 0) continue;
    spec.sizes.push_back(size[x]);
    spec.excess.push_back(edge_count[x] - (size[x] - 1));
  }
  sort_spectrum(spec);
  return spec;
}

ComponentSpectrum sample_direct(const GraphParams& params, RngSeed seed) {
  Rng rng = make_rng(seed);
  return sample_direct(params, rng);
}

ComponentSpectrum sample_direct(const GraphParams& params, Rng& rng) {
  if (params.n() > kDirectSamplerLimit) {
    throw std::invalid_argument("sample_direct: n exceeds " + std::to_string(kDirectSamplerLimit));
  }
  return spectrum_from_edges(params.n(), sample_edges(params, rng));
}

void write_trace_csv(std::ostream& os, const ExplorationTrace& trace) {
  os << "i,v,q,e,phi,s\n";
  for (std::int64_t i = 0; i <= trace.n(); ++i) {
    os << i << ',' << trace.v[i] << ',' << trace.q[i] << ',' << trace.e[i] << ','
       << trace.phi[i] << ',' << trace.s[i] << '\n';
  }
}

void write_spectrum_rows(std::ostream& os, const std::vector<ComponentSpectrum>& spectra) {
  os << "replication,rank,size,excess\n";
  for (std::size_t r = 0; r < spectra.size(); ++r) {
    const auto& sp = spectra[r];
    for (std::size_t k = 0; k < sp.sizes.size(); ++k) {
      os << r << ',' << k + 1 << ',' << sp.sizes[k] << ',' << sp.excess[k] << '\n';
    }
  }
}

void write_spectrum_summary(std::ostream& os, const std::vector<ComponentSpectrum>& spectra) {
  os << "replication,count,largest,largest_excess\n";
  for (std::size_t r = 0; r < spectra.size(); ++r) {
    const auto& sp = spectra[r];
    os << r << ',' << sp.count << ',' << sp.largest() << ',' << sp.largest_excess() << '\n';
  }
}

}  // namespace giantscope
