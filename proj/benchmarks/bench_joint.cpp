#include <benchmark/benchmark.h>

#include "qruler/scenarios.hpp"

namespace {

using namespace qruler;

void BM_JointStatistics(benchmark::State& state) {
  const auto s = GaussianState::pure(0.8, 0.5, 0.45, 0.7);
  JointGridOptions opts;
  opts.m_points = opts.k_points = static_cast<std::size_t>(state.range(0));
  const auto plan = plan_joint_grid(s, 0.6, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_statistics([&](double p) { return s.wavefunction_p(p); }, plan));
  }
}
BENCHMARK(BM_JointStatistics)->Arg(128)->Arg(256);

void BM_CoherentSqueezedFisher(benchmark::State& state) {
  ScenarioSpec spec;
  spec.kind = ScenarioKind::PhaseCoherentSqueezed;
  spec.probe = GaussianProbeSpec{0.8, -0.5, 0.45};
  spec.ruler = {0.6, true};
  spec.hbar = 0.7;
  const auto f = run_phase_coherent_squeezed(spec);
  for (auto _ : state) benchmark::DoNotOptimize(fisher_from_family(f.family, 0.0, f.fisher_step));
}
BENCHMARK(BM_CoherentSqueezedFisher)->Unit(benchmark::kMillisecond);

}  // namespace
