#include <benchmark/benchmark.h>

#include "liouville/classical.hpp"
#include "liouville/ergodic.hpp"
#include "liouville/groupspace.hpp"
#include "liouville/pumping.hpp"
#include "liouville/wigner.hpp"

using namespace liouville;

static void BM_LeapfrogQuartic(benchmark::State& state) {
  const auto h = HamiltonianSpec::quartic();
  PhaseSpacePoint x{0.0, 1.0};
  for (auto _ : state) {
    x = leapfrog_step(x, 1e-3, h);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_LeapfrogQuartic);

static void BM_FlowJacobian(benchmark::State& state) {
  const auto h = HamiltonianSpec::pendulum();
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow_jacobian(h, {0.2, 0.9}, static_cast<double>(state.range(0))));
  }
}
BENCHMARK(BM_FlowJacobian)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_WignerTransform(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = WavefunctionGrid::coherent_state(1.0, 0.5, 1.0, 1.0, 1.0, -12.0, 12.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_transform(psi));
}
BENCHMARK(BM_WignerTransform)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_SplitStep(benchmark::State& state) {
  auto psi = WavefunctionGrid::coherent_state(1.0, 0.0);
  const SplitStepPropagator prop(psi, PotentialSpec::quartic(), 2e-5);
  for (auto _ : state) prop.advance(psi, 100);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SplitStep)->Unit(benchmark::kMicrosecond);

static void BM_OrbitIteration(benchmark::State& state) {
  const auto u = build_unitary({0.3, 1.0, 0.7});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate_orbit(u, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrbitIteration)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_HaarHistogram(benchmark::State& state) {
  const auto orbit = iterate_orbit(build_unitary({0.0, 1.0, 0.0}), 100000);
  for (auto _ : state) benchmark::DoNotOptimize(haar_histogram(orbit, 20));
}
BENCHMARK(BM_HaarHistogram)->Unit(benchmark::kMillisecond);

static void BM_So3Jacobian(benchmark::State& state) {
  const EulerAngles fixed{0.3, 1.2, -0.8};
  const EulerAngles at{1.1, 0.7, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(so3_translation_jacobian(fixed, at));
}
BENCHMARK(BM_So3Jacobian);

static void BM_PumpingSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pumping_series({0.3, 1.0, 0.7}, 1'000'000));
}
BENCHMARK(BM_PumpingSeries)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
