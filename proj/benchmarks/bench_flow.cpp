#include <benchmark/benchmark.h>

#include <numeric>

#include "tempoctrl/controllability.hpp"
#include "tempoctrl/generate.hpp"
#include "tempoctrl/online_flow.hpp"

using namespace tempoctrl;

namespace {

LayeredFlowGraph layered_er(std::size_t n) {
  GeneratorSpec spec;
  spec.nodes = n;
  spec.snapshots = 20;
  spec.probability = 2.0 / static_cast<double>(n - 1);
  spec.seed = 3;
  return LayeredFlowGraph(generate(spec));
}

// Growing the driver set one node at a time on a single residual.
void BM_OnlineIncrements(benchmark::State& state) {
  const auto layered = layered_er(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto residual = layered.initial_state();
    for (NodeId v = 0; v < static_cast<NodeId>(layered.node_count()); v += 4)
      benchmark::DoNotOptimize(online_maxflow(residual, layered, v));
  }
}
BENCHMARK(BM_OnlineIncrements)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

// The same sequence of driver sets, each evaluated from an empty residual.
void BM_ScratchEvaluations(benchmark::State& state) {
  const auto layered = layered_er(static_cast<std::size_t>(state.range(0)));
  const auto order = static_cast<SearchOrder>(state.range(1));
  for (auto _ : state) {
    DriverSet d;
    for (NodeId v = 0; v < static_cast<NodeId>(layered.node_count()); v += 4) {
      d.insert(v);
      benchmark::DoNotOptimize(controllable_dimension(layered, d, order));
    }
  }
}
BENCHMARK(BM_ScratchEvaluations)
    ->ArgsProduct({{50, 100, 200},
                   {static_cast<long>(SearchOrder::breadth_first),
                    static_cast<long>(SearchOrder::level_blocking)}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
