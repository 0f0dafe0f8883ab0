#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tempoctrl/detect.hpp"
#include "tempoctrl/edge_analysis.hpp"
#include "tempoctrl/generate.hpp"

using namespace tempoctrl;

namespace {

TemporalNetwork er(std::size_t n, std::size_t t, double p, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.nodes = n;
  spec.snapshots = t;
  spec.probability = p;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST(ClassifyEdges, LoneEdgeIsCritical) {
  TemporalNetwork net(2, {{{0, 1}}}, true);
  auto c = classify_edges(net, 10);
  EXPECT_EQ(c.provenance, Provenance::exact);
  EXPECT_EQ(c.reference_driver_count, 1u);
  EXPECT_EQ(c.reference_drivers, DriverSet{0});
  ASSERT_EQ(c.edges.size(), 1u);
  EXPECT_EQ(c.edges[0].role, EdgeRole::critical);
  EXPECT_EQ(c.edges[0].perturbed_driver_count, 2u);
}

TEST(ClassifyEdges, RepeatedEdgeIsRedundant) {
  TemporalNetwork net(2, {{{0, 1}}, {{0, 1}}}, true);
  auto c = classify_edges(net, 10);
  EXPECT_EQ(c.reference_drivers, DriverSet{0});
  ASSERT_EQ(c.edges.size(), 2u);
  for (const auto& v : c.edges) EXPECT_EQ(v.role, EdgeRole::redundant);
  for (const auto& e : net.temporal_edges()) {
    const TemporalEdge removed[] = {e};
    auto pruned = net.without_edges(removed);
    auto r = brute_force(pruned);
    EXPECT_EQ(*r.minimum_size, 1u);
  }
}

TEST(ClassifyEdges, VerdictsAgreeWithDirectProbes) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto net = er(8, 5, 0.08, seed);
    const auto before = to_json(net).dump();
    auto c = classify_edges(net, 10);
    EXPECT_EQ(to_json(net).dump(), before);
    const int n = static_cast<int>(net.node_count());
    const auto edges = net.temporal_edges();
    ASSERT_EQ(c.edges.size(), edges.size());
    EXPECT_EQ(c.count(EdgeRole::critical) + c.count(EdgeRole::ordinary) +
                  c.count(EdgeRole::redundant),
              edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      EXPECT_EQ(c.edges[i].edge, edges[i]);
      const TemporalEdge removed[] = {edges[i]};
      auto pruned = net.without_edges(removed);
      const bool still = controllable_dimension(pruned, c.reference_drivers) == n;
      EXPECT_EQ(c.edges[i].role == EdgeRole::redundant, still);
      if (still) continue;
      auto r = brute_force(pruned, BruteForceOptions{.first_only = true});
      if (c.edges[i].role == EdgeRole::critical)
        EXPECT_GT(*r.minimum_size, c.reference_driver_count);
      else
        EXPECT_EQ(*r.minimum_size, c.reference_driver_count);
    }
  }
}

TEST(ClassifyEdges, LargeNetworksAreApproximate) {
  auto net = er(12, 4, 0.1, 3);
  auto c = classify_edges(net, 5);
  EXPECT_EQ(c.provenance, Provenance::approximate);
  EXPECT_EQ(c.reference_drivers, otaha(net).driver_set());
  auto doc = to_json(c, net);
  EXPECT_EQ(doc["provenance"], "approximate");
  EXPECT_EQ(doc["edges"].size(), net.edge_count());
}

TEST(EdgeBetweenness, DirectedPath) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  auto b = edge_betweenness(3, edges);
  EXPECT_DOUBLE_EQ(b[0], 2.0);
  EXPECT_DOUBLE_EQ(b[1], 2.0);
}

TEST(EdgeBetweenness, Star) {
  const std::vector<Edge> edges{{0, 1}, {0, 2}};
  auto b = edge_betweenness(3, edges);
  EXPECT_DOUBLE_EQ(b[0], 1.0);
  EXPECT_DOUBLE_EQ(b[1], 1.0);
}

TEST(EdgeBetweenness, SplitsCreditAcrossEqualPaths) {
  // Diamond 0 -> {1, 2} -> 3 plus a parallel copy of 1 -> 3.
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 3}};
  auto b = edge_betweenness(4, edges);
  auto ref = oracle::betweenness_by_enumeration(4, edges);
  for (std::size_t e = 0; e < edges.size(); ++e) EXPECT_NEAR(b[e], ref[e], 1e-12);
  EXPECT_NEAR(b[2], b[4], 1e-12);
}

TEST(EdgeBetweenness, MatchesShortestPathEnumeration) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 6 + trial % 25;
    std::bernoulli_distribution keep(trial % 2 ? 0.12 : 0.25);
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (i != j && keep(rng)) edges.push_back({i, j});
    auto b = edge_betweenness(static_cast<std::size_t>(n), edges);
    auto ref = oracle::betweenness_by_enumeration(n, edges);
    for (std::size_t e = 0; e < edges.size(); ++e) ASSERT_NEAR(b[e], ref[e], 1e-9) << trial;
  }
}

TEST(EdgeBetweenness, TemporalScoresLiveOnTheLayeredGraph) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto net = er(5, 4, 0.3, seed);
    const int n = static_cast<int>(net.node_count());
    std::vector<Edge> layered;
    for (const auto& e : net.temporal_edges())
      layered.push_back({e.time * n + e.source, (e.time + 1) * n + e.target});
    auto ref = oracle::betweenness_by_enumeration(n * static_cast<int>(net.steps() + 1), layered);
    auto b = temporal_edge_betweenness(net);
    ASSERT_EQ(b.size(), ref.size());
    for (std::size_t e = 0; e < b.size(); ++e) EXPECT_NEAR(b[e], ref[e], 1e-9);
  }
}

TEST(AttackStrategy, Parsing) {
  EXPECT_EQ(parse_attack_strategy("random"), AttackStrategy::random);
  EXPECT_EQ(parse_attack_strategy("asc"), AttackStrategy::ascending);
  EXPECT_EQ(parse_attack_strategy("descending"), AttackStrategy::descending);
  EXPECT_THROW(parse_attack_strategy("sideways"), std::invalid_argument);
}

TEST(AttackSimulation, EndpointsAndMonotonicity) {
  auto net = er(12, 6, 0.15, 4);
  const std::vector<DriverSet> sets{otaha(net).driver_set(), DriverSet::all(12)};
  for (auto strategy : {AttackStrategy::random, AttackStrategy::ascending,
                        AttackStrategy::descending}) {
    AttackOptions opts;
    opts.strategy = strategy;
    opts.step_fraction = 0.1;
    opts.trials = 10;
    opts.seed = 1;
    auto traces = attack_simulation(net, sets, opts);
    ASSERT_EQ(traces.size(), 2u);
    for (std::size_t i = 0; i < traces.size(); ++i) {
      const auto& pts = traces[i].points;
      EXPECT_EQ(traces[i].driver_set_id, i);
      EXPECT_EQ(traces[i].strategy, strategy);
      ASSERT_EQ(pts.size(), 11u);
      EXPECT_DOUBLE_EQ(pts.front().fraction, 0.0);
      EXPECT_DOUBLE_EQ(pts.front().mean_dimension, 12.0);
      EXPECT_DOUBLE_EQ(pts.back().fraction, 1.0);
      EXPECT_EQ(pts.back().removed, net.edge_count());
      EXPECT_DOUBLE_EQ(pts.back().mean_dimension, static_cast<double>(sets[i].size()));
      for (std::size_t k = 1; k < pts.size(); ++k)
        EXPECT_LE(pts[k].mean_dimension, pts[k - 1].mean_dimension + 1e-12);
    }
  }
}

TEST(AttackSimulation, StaticOrderFollowsBetweenness) {
  auto net = er(10, 5, 0.2, 8);
  const std::vector<DriverSet> sets{otaha(net).driver_set()};
  auto scores = temporal_edge_betweenness(net);
  auto edges = net.temporal_edges();
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  AttackOptions opts;
  opts.strategy = AttackStrategy::descending;
  opts.step_fraction = 0.25;
  auto trace = attack_simulation(net, sets, opts).front();
  for (const auto& pt : trace.points) {
    std::vector<TemporalEdge> removed;
    for (std::size_t i = 0; i < pt.removed; ++i) removed.push_back(edges[order[i]]);
    EXPECT_DOUBLE_EQ(pt.mean_dimension,
                     controllable_dimension(net.without_edges(removed), sets[0]));
    EXPECT_DOUBLE_EQ(pt.std_dimension, 0.0);
  }
}

TEST(AttackSimulation, RandomTrialsAreReproducibleAcrossThreadCounts) {
  auto net = er(10, 5, 0.2, 2);
  const std::vector<DriverSet> sets{otaha(net).driver_set()};
  AttackOptions opts;
  opts.strategy = AttackStrategy::random;
  opts.trials = 12;
  opts.seed = 99;
  opts.step_fraction = 0.2;
  auto one = attack_simulation(net, sets, opts);
  opts.threads = 3;
  auto three = attack_simulation(net, sets, opts);
  ASSERT_EQ(one[0].points.size(), three[0].points.size());
  for (std::size_t k = 0; k < one[0].points.size(); ++k) {
    EXPECT_DOUBLE_EQ(one[0].points[k].mean_dimension, three[0].points[k].mean_dimension);
    EXPECT_DOUBLE_EQ(one[0].points[k].std_dimension, three[0].points[k].std_dimension);
  }
  EXPECT_EQ(one[0].trials, 12u);
}

TEST(AttackSimulation, AdaptiveModeKeepsEndpoints) {
  auto net = er(10, 5, 0.2, 6);
  const std::vector<DriverSet> sets{otaha(net).driver_set()};
  AttackOptions opts;
  opts.recompute_betweenness = true;
  opts.step_fraction = 0.2;
  auto trace = attack_simulation(net, sets, opts).front();
  EXPECT_DOUBLE_EQ(trace.points.front().mean_dimension, 10.0);
  EXPECT_DOUBLE_EQ(trace.points.back().mean_dimension, static_cast<double>(sets[0].size()));
}

TEST(AttackSimulation, RejectsBadArguments) {
  auto net = er(6, 3, 0.2, 1);
  const std::vector<DriverSet> good{DriverSet::all(6)};
  AttackOptions opts;
  opts.step_fraction = 0.0;
  EXPECT_THROW(attack_simulation(net, good, opts), std::invalid_argument);
  opts.step_fraction = 1.5;
  EXPECT_THROW(attack_simulation(net, good, opts), std::invalid_argument);
  opts.step_fraction = 0.5;
  const std::vector<DriverSet> bad{DriverSet{}};
  EXPECT_THROW(attack_simulation(net, bad, opts), std::invalid_argument);
}

TEST(AttackSimulation, CsvAndArea) {
  AttackTrace t;
  t.strategy = AttackStrategy::ascending;
  t.driver_set_id = 2;
  t.points = {{0.0, 0, 4.0, 0.0}, {0.5, 3, 3.0, 0.5}, {1.0, 6, 2.0, 0.0}};
  EXPECT_DOUBLE_EQ(trace_area(t), 0.5 * 3.5 + 0.5 * 2.5);
  std::ostringstream out;
  const AttackTrace traces[] = {t};
  write_attack_csv(out, traces);
  EXPECT_EQ(out.str(),
            "strategy,driver_set_id,fraction,dimension,trial_mean,trial_std\n"
            "ascending,2,0.000000,4.000000,4.000000,0.000000\n"
            "ascending,2,0.500000,3.000000,3.000000,0.500000\n"
            "ascending,2,1.000000,2.000000,2.000000,0.000000\n");
}
