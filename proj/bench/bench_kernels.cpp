// Serial reference vs OpenMP estimator sweeps on the same trial streams.

#include <benchmark/benchmark.h>

#include "subsetspace/flow.hpp"
#include "subsetspace/retract.hpp"
#include "subsetspace/verify.hpp"

#if SUBSETSPACE_HAVE_OPENMP
#include <omp.h>
#endif

using namespace subsetspace;

namespace {

SamplerSpec spec(std::size_t max_points, double p) {
  SamplerSpec s;
  s.kind = SamplerKind::Mixed;
  s.norm = NormDescriptor::make(p, 1.0, 2);
  s.max_points = max_points;
  return s;
}

SubsetMap flow_map(std::size_t n) {
  FlowOptions o;
  o.n = n;
  o.record_trajectory = false;
  return [o](const FiniteSubset& x) { return flow_retract(x, o).output; };
}

void set_threads(benchmark::State& state) {
#if SUBSETSPACE_HAVE_OPENMP
  state.counters["threads"] = omp_get_max_threads();
#else
  state.counters["threads"] = 1;
#endif
}

void BM_Retract3Serial(benchmark::State& state) {
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        serial::estimate_lipschitz("retract3", retract_3_to_2, spec(3, 2.0), trials, 1).max_ratio);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Retract3Parallel(benchmark::State& state) {
  const auto trials = static_cast<std::size_t>(state.range(0));
  set_threads(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_lipschitz("retract3", retract_3_to_2, spec(3, 2.0), trials, 1).max_ratio);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FlowHolderSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(serial::check_holder(flow_map(n), n, spec(n, 2.0), 200, 1).worst_margin);
  state.SetItemsProcessed(state.iterations() * 200);
}

void BM_FlowHolderParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  set_threads(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(check_holder(flow_map(n), n, spec(n, 2.0), 200, 1).worst_margin);
  state.SetItemsProcessed(state.iterations() * 200);
}

}  // namespace

BENCHMARK(BM_Retract3Serial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Retract3Parallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowHolderSerial)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowHolderParallel)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
