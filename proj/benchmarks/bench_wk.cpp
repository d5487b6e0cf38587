#include <benchmark/benchmark.h>

#include "qruler/wk.hpp"

namespace {

using namespace qruler;

void BM_CoherenceFunction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = GeneratorGrid::centered(0.0, 12.0, n);
  const auto probe = make_gaussian_probe({0.0, 0.5, 1.0}, grid);
  const auto ruler = make_gaussian_ruler(0.5, grid);
  for (auto _ : state) benchmark::DoNotOptimize(coherence_function(probe, ruler));
}
BENCHMARK(BM_CoherenceFunction)->Arg(257)->Arg(1025);

void BM_StatisticsTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = GeneratorGrid::centered(0.0, 12.0, n);
  const auto probe = make_gaussian_probe({0.0, 0.5, 1.0}, grid);
  const auto gamma = coherence_function(probe, make_gaussian_ruler(0.5, grid));
  for (auto _ : state) benchmark::DoNotOptimize(statistics_from_coherence(gamma, {0.0, 2}));
}
BENCHMARK(BM_StatisticsTransform)->Arg(257)->Arg(1025);

void BM_DirectTrace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = GeneratorGrid::centered(0.0, 12.0, n);
  const auto probe = make_gaussian_probe({0.0, 0.5, 1.0}, grid);
  const auto ruler = make_gaussian_ruler(0.5, grid);
  const auto mu = dual_grid(coherence_function(probe, ruler));
  for (auto _ : state) benchmark::DoNotOptimize(direct_statistics(probe, ruler, mu));
}
BENCHMARK(BM_DirectTrace)->Arg(257);

}  // namespace
