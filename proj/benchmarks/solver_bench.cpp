#include <benchmark/benchmark.h>

#include "beam/dynamics.hpp"
#include "beam/stationary.hpp"

namespace {

using namespace beam;

BeamProblem problem(std::size_t n, Scheme scheme) {
  const BeamScenario sc;
  return BeamProblem(sc, Discretization(sc.a, sc.b, n, scheme));
}

// One implicit step from the default initial state.
void BM_Step(benchmark::State& st, Scheme scheme) {
  const auto p = problem(static_cast<std::size_t>(st.range(0)), scheme);
  const State s0 = initial_state(p);
  for (auto _ : st) benchmark::DoNotOptimize(step(s0, p, p.scenario().dt));
  st.SetComplexityN(st.range(0));
}
BENCHMARK_CAPTURE(BM_Step, fd, Scheme::FiniteDifference)->RangeMultiplier(2)->Range(50, 800)->Complexity();
BENCHMARK_CAPTURE(BM_Step, spectral, Scheme::SpectralSine)->RangeMultiplier(2)->Range(50, 400)->Complexity();

// A short run, ledger and all.
void BM_Run(benchmark::State& st) {
  BeamScenario sc;
  sc.t_end = 0.1;
  const BeamProblem p(sc, Discretization(sc.a, sc.b, 200, Scheme::FiniteDifference));
  RunOptions opts;
  opts.snapshot_stride = 1000;
  for (auto _ : st) benchmark::DoNotOptimize(run(p, opts));
}
BENCHMARK(BM_Run)->Unit(benchmark::kMillisecond);

void BM_Stationary(benchmark::State& st, Scheme scheme) {
  const auto p = problem(static_cast<std::size_t>(st.range(0)), scheme);
  for (auto _ : st) benchmark::DoNotOptimize(solve_stationary(p));
}
BENCHMARK_CAPTURE(BM_Stationary, fd, Scheme::FiniteDifference)->Arg(100)->Arg(200)->Arg(800);
BENCHMARK_CAPTURE(BM_Stationary, spectral, Scheme::SpectralSine)->Arg(100)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
