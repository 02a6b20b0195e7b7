#include <benchmark/benchmark.h>

#include "giantscope/exact_oracle.hpp"
#include "giantscope/exploration.hpp"
#include "giantscope/rates.hpp"
#include "giantscope/variational.hpp"

namespace gs = giantscope;

static void BM_ExploreSpectrum(benchmark::State& state) {
  const gs::GraphParams params(state.range(0), 2.0);
  gs::Rng rng = gs::make_rng({7, 0});
  for (auto _ : state) benchmark::DoNotOptimize(gs::explore_spectrum(params, rng).count);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExploreSpectrum)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMicrosecond);

static void BM_ExploreTrace(benchmark::State& state) {
  const gs::GraphParams params(state.range(0), 2.0);
  gs::Rng rng = gs::make_rng({7, 1});
  for (auto _ : state) benchmark::DoNotOptimize(gs::explore(params, rng).q.back());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExploreTrace)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_SampleDirect(benchmark::State& state) {
  const gs::GraphParams params(state.range(0), 2.0);
  gs::Rng rng = gs::make_rng({7, 2});
  for (auto _ : state) benchmark::DoNotOptimize(gs::sample_direct(params, rng).count);
}
BENCHMARK(BM_SampleDirect)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_EnumerateExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gs::enumerate_exact(static_cast<int>(state.range(0)), 0.3, 1));
}
BENCHMARK(BM_EnumerateExact)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_IAlpha(benchmark::State& state) {
  double a = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::i_alpha(a, 3.0));
    a = a > 0.95 ? 0.05 : a + 0.01;
  }
}
BENCHMARK(BM_IAlpha);

static void BM_KStar(benchmark::State& state) {
  double u = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::k_star(u, 0.1 * u, 2.0));
    u = u > 0.95 ? 0.05 : u + 0.01;
  }
}
BENCHMARK(BM_KStar);

static void BM_IBeta(benchmark::State& state) {
  double u = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gs::i_beta(u, 3.0));
    u = u > 0.6 ? 0.05 : u + 0.01;
  }
}
BENCHMARK(BM_IBeta);

static void BM_ExcursionQuadrature(benchmark::State& state) {
  const auto cells = static_cast<std::size_t>(state.range(0));
  const auto e = gs::optimal_excursion(0.2, 0.7, 0.05, 2.0, cells);
  for (auto _ : state) benchmark::DoNotOptimize(gs::i_S_functional(e.path, 2.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExcursionQuadrature)->RangeMultiplier(8)->Range(512, 262144)->Unit(benchmark::kMicrosecond);

static void BM_LlnCurves(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gs::lln_curves(2.0, static_cast<std::size_t>(state.range(0))).qbar[1]);
}
BENCHMARK(BM_LlnCurves)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
