#include <benchmark/benchmark.h>

#include "wignerlab/ensembles.hpp"
#include "wignerlab/hermitian.hpp"
#include "wignerlab/spectral.hpp"

using namespace wignerlab;

static void BM_EigenvaluesReal(benchmark::State& state) {
  const auto a = sample(unit_wigner(std::size_t(state.range(0)), EntryLaw::gaussian_real(), 1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_desc(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigenvaluesReal)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNCubed);

static void BM_EigenvaluesComplex(benchmark::State& state) {
  const auto a = sample(unit_wigner(std::size_t(state.range(0)), EntryLaw::gaussian_complex(), 1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_desc(a));
}
BENCHMARK(BM_EigenvaluesComplex)->RangeMultiplier(2)->Range(64, 512);

static void BM_EigenWithBasis(benchmark::State& state) {
  const auto a = sample(unit_wigner(std::size_t(state.range(0)), EntryLaw::gaussian_real(), 1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_decompose(a, true));
}
BENCHMARK(BM_EigenWithBasis)->RangeMultiplier(2)->Range(64, 256);

static void BM_Sample(benchmark::State& state) {
  const auto spec = unit_wigner(std::size_t(state.range(0)), EntryLaw::rademacher(), 1);
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(spec, t++));
}
BENCHMARK(BM_Sample)->Arg(256)->Arg(1024);

static void BM_LevySemicircle(benchmark::State& state) {
  const auto ev = eigenvalues_desc(sample(unit_wigner(std::size_t(state.range(0)), EntryLaw::gaussian_real(), 1), 0));
  const auto f = esd(ev);
  for (auto _ : state) benchmark::DoNotOptimize(levy_distance(f, SemicircleLaw{}));
}
BENCHMARK(BM_LevySemicircle)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
