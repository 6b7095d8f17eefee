#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "expwave/characteristics.hpp"
#include "expwave/diagnostics.hpp"
#include "expwave/hum.hpp"
#include "expwave/spectral.hpp"

using namespace expwave;

namespace {

const MovingDomain dom = make_domain(0.5, 2.0);

SpectralSolution solution(int band) {
  return random_band_limited(dom, band, 97u, 0.5);
}

}  // namespace

static void BM_SpectralEvaluate(benchmark::State& state) {
  const SpectralSolution sol = solution(static_cast<int>(state.range(0)));
  double x = 0.3, t = 2.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol.evaluate(x, t));
    // walk the point around to defeat any value caching
    x = 0.1 + 0.8 * (x * 1.37 - std::floor(x * 1.37));
    t = 2.0 + (t * 1.21 - std::floor(t * 1.21));
  }
}
BENCHMARK(BM_SpectralEvaluate)->Arg(4)->Arg(16)->Arg(64);

static void BM_ComputeCoefficients(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const InitialData data = synthesized_data(solution(order / 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_coefficients(data, order));
}
BENCHMARK(BM_ComputeCoefficients)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_BuildProfile(benchmark::State& state) {
  const InitialData data = synthesized_data(solution(8));
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_profile(data, samples));
}
BENCHMARK(BM_BuildProfile)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

static void BM_IdentitySuite(benchmark::State& state) {
  const SpectralSolution sol = solution(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_identity_suite(sol));
}
BENCHMARK(BM_IdentitySuite)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_GramianClosed(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_gramian(dom, Endpoint::moving, 6.0, order));
}
BENCHMARK(BM_GramianClosed)->Arg(8)->Arg(32);

static void BM_GramianQuadrature(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        build_gramian_quadrature(dom, Endpoint::moving, 6.0, order));
}
BENCHMARK(BM_GramianQuadrature)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_ControlledMarch(benchmark::State& state) {
  const InitialData data = synthesized_data(solution(8));
  const BoundaryControl off = BoundaryControl::zero(dom, Endpoint::fixed, 2.0, 6.0);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_controlled(data, off, 6.0, samples));
}
BENCHMARK(BM_ControlledMarch)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

static void BM_SynthesizeControl(benchmark::State& state) {
  const InitialData data = synthesized_data(solution(4));
  const double T = dom.t0 + dom.critical_time;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        synthesize_null_control(data, Endpoint::fixed, T, 8, 16));
}
BENCHMARK(BM_SynthesizeControl)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
