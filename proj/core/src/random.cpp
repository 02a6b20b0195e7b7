#include "giantscope/random.hpp"

#include <cmath>

namespace giantscope {

namespace {

constexpr double kInversionMeanLimit = 16.0;

std::int64_t binomial_inversion(Rng& rng, std::int64_t trials, double p) {
  const double q = 1.0 - p;
  const double ratio = p / q;
  const double p0 = std::exp(static_cast<double>(trials) * std::log1p(-p));
  for (;;) {
    double u = uniform01(rng);
    double f = p0;
    for (std::int64_t k = 0;; ++k) {
      if (u < f) return k;
      u -= f;
      if (k == trials) break;
      f *= ratio * static_cast<double>(trials - k) / static_cast<double>(k + 1);
    }
    // Only accumulated rounding lets u survive the full walk; redraw.
  }
}

}  // namespace

std::int64_t sample_binomial(Rng& rng, std::int64_t trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (p > 0.5) return trials - sample_binomial(rng, trials, 1.0 - p);
  if (static_cast<double>(trials) * p < kInversionMeanLimit) {
    return binomial_inversion(rng, trials, p);
  }
  std::binomial_distribution<std::int64_t> dist(trials, p);
  return dist(rng);
}

std::int64_t sample_poisson(Rng& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean < 30.0) {
    // Multiplication of uniforms (Knuth); exact up to rounding.
    const double limit = std::exp(-mean);
    double prod = uniform01(rng);
    std::int64_t k = 0;
    while (prod >= limit) {
      prod *= uniform01(rng);
      ++k;
    }
    return k;
  }
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(rng);
}

}  // namespace giantscope
