#include <benchmark/benchmark.h>

#include "wignerlab/walks.hpp"

using namespace wignerlab;

static void BM_GammaEnumeration(benchmark::State& state) {
  const auto k = std::size_t(state.range(0));
  for (auto _ : state) {
    std::size_t count = 0;
    for (std::size_t t = 1; t <= k + 1; ++t) for_each_gamma(k, t, [&](const CanonicalWalk&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_GammaEnumeration)->DenseRange(4, 10, 2);

static void BM_ClassifyCensus(benchmark::State& state) {
  const auto k = std::size_t(state.range(0));
  for (auto _ : state) {
    std::size_t dt = 0;
    for (std::size_t t = 1; t <= k + 1; ++t)
      for_each_gamma(k, t, [&](const CanonicalWalk& c) { dt += classify(c) == WalkClass::double_tree; });
    benchmark::DoNotOptimize(dt);
  }
}
BENCHMARK(BM_ClassifyCensus)->DenseRange(4, 10, 2);

static Tree path_tree(std::size_t v) {
  Tree t;
  t.vertices = v;
  for (std::size_t i = 1; i < v; ++i) t.edges.emplace_back(i - 1, i);
  return t;
}

static void BM_TreeProductSumBanded(benchmark::State& state) {
  const auto tree = path_tree(std::size_t(state.range(0)));
  const std::size_t n = 256;
  const auto profile = VarianceProfile::banded(8, 2.0 / n, 0.5 / n);
  for (auto _ : state) benchmark::DoNotOptimize(tree_product_sum(tree, profile, n));
}
BENCHMARK(BM_TreeProductSumBanded)->DenseRange(2, 6, 1);

static void BM_WalkSumMoment(benchmark::State& state) {
  const std::size_t n = 4;
  const auto k = std::size_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(walk_sum_moment(EntryLaw::gaussian_real(), VarianceProfile::uniform(0.25), n, k));
}
BENCHMARK(BM_WalkSumMoment)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
