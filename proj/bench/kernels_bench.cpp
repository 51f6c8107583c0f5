// Serial reference against OpenMP for each parallel kernel.  The second
// benchmark argument selects the execution mode: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "orderflow/digraph.hpp"
#include "orderflow/intervalmap.hpp"
#include "orderflow/kernels.hpp"

using namespace orderflow;

namespace {
  Execution mode(benchmark::State const& state) {
    return state.range(0) ? Execution::parallel : Execution::serial;
  }

  DiPath long_loop() {
    std::vector<Perm> e;
    for (auto s : {"23451", "34512", "45132", "41325", "13254", "31542", "15423", "54123", "51234"}) {
      e.push_back(Perm::parse(s));
    }
    return DiPath(e);
  }

  void BM_scan_lifts(benchmark::State& state) {
    // A 5-edge prefix of the loop, so the scan runs over S_9.
    auto full = long_loop();
    DiPath p(std::vector<Perm>(full.edges().begin(), full.edges().begin() + 5));
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::scan_lifts(p, mode(state)));
    }
  }

  void BM_saturate(benchmark::State& state) {
    auto g = Subgraph::full(3);
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::saturate(g, mode(state)));
    }
  }

  void BM_census_subsets(benchmark::State& state) {
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::census_subsets(3, mode(state)));
    }
  }

  void BM_sample_patterns(benchmark::State& state) {
    auto f = builtin("doubling");
    for (auto _ : state) {
      benchmark::DoNotOptimize(kernels::sample_patterns(f, 6, 200000, 1, mode(state)));
    }
  }
}  // namespace

BENCHMARK(BM_scan_lifts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_saturate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_subsets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_patterns)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
