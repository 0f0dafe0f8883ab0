#include <benchmark/benchmark.h>

#include "tempoctrl/detect.hpp"
#include "tempoctrl/generate.hpp"

using namespace tempoctrl;

namespace {

TemporalNetwork er_network(std::size_t n, std::size_t t, double p) {
  GeneratorSpec spec;
  spec.nodes = n;
  spec.snapshots = t;
  spec.probability = p;
  spec.seed = 1;
  return generate(spec);
}

// Mean degree held near 2 so the driver count stays small as N grows.
double sparse_p(std::size_t n) { return 2.0 / static_cast<double>(n - 1); }

void BM_Otaha(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = er_network(n, 20, sparse_p(n));
  std::size_t evaluations = 0;
  for (auto _ : state) {
    auto sel = otaha(net);
    evaluations = sel.evaluations;
    benchmark::DoNotOptimize(sel);
  }
  state.counters["evaluations"] = static_cast<double>(evaluations);
}
BENCHMARK(BM_Otaha)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GreedyBaseline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto net = er_network(n, 20, sparse_p(n));
  std::size_t evaluations = 0;
  for (auto _ : state) {
    auto sel = greedy_baseline(net);
    evaluations = sel.evaluations;
    benchmark::DoNotOptimize(sel);
  }
  state.counters["evaluations"] = static_cast<double>(evaluations);
}
BENCHMARK(BM_GreedyBaseline)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto net = er_network(static_cast<std::size_t>(state.range(0)), 10, 0.15);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(net, BruteForceOptions{.first_only = true}));
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
