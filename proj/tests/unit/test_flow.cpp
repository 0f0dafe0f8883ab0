#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <queue>
#include <random>

#include "oracles.hpp"
#include "tempoctrl/controllability.hpp"
#include "tempoctrl/flow_network.hpp"
#include "tempoctrl/generate.hpp"
#include "tempoctrl/layered_graph.hpp"
#include "tempoctrl/online_flow.hpp"

using namespace tempoctrl;

namespace {

std::shared_ptr<const FlowNetwork> make_network(int n, const std::vector<std::pair<int, int>>& edges,
                                                int s, int t) {
  FlowNetwork::Builder b(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::make_shared<const FlowNetwork>(std::move(b).build(s, t));
}

std::vector<std::pair<int, int>> random_dag(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) edges.emplace_back(i, j);
  return edges;
}

// Plain reachability over residual arcs, independent of the search code.
bool sink_reachable(const ResidualState& state) {
  const auto& g = state.network();
  std::vector<bool> seen(g.node_count(), false);
  std::queue<FlowNodeId> q;
  q.push(g.source());
  seen[static_cast<std::size_t>(g.source())] = true;
  while (!q.empty()) {
    const FlowNodeId u = q.front();
    q.pop();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto id = static_cast<EdgeId>(e);
      FlowNodeId next = -1;
      if (g.tail(id) == u && state.residual(id, true)) next = g.head(id);
      if (g.head(id) == u && state.residual(id, false)) next = g.tail(id);
      if (next < 0 || seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = true;
      q.push(next);
    }
  }
  return seen[static_cast<std::size_t>(g.sink())];
}

TemporalNetwork random_temporal(std::size_t n, std::size_t t, double p, std::uint64_t seed,
                                bool self_loops = true) {
  GeneratorSpec spec;
  spec.nodes = n;
  spec.snapshots = t;
  spec.probability = p;
  spec.seed = seed;
  spec.self_loops = self_loops;
  return generate(spec);
}

}  // namespace

TEST(MaxFlow, SinglePath) {
  ResidualState state(make_network(3, {{0, 1}, {1, 2}}, 0, 2));
  EXPECT_EQ(state.max_flow(), 1);
  EXPECT_EQ(state.flow_value(), 1);
}

TEST(MaxFlow, TwoDisjointPaths) {
  ResidualState state(make_network(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 0, 3));
  EXPECT_EQ(state.max_flow(), 2);
  EXPECT_EQ(state.max_flow(), 0);
}

TEST(MaxFlow, MatchesEnumeratedMinCutOnRandomDags) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const double p = 0.2 + 0.1 * (trial % 5);
    auto edges = random_dag(12, p, rng);
    const int cut = oracle::min_cut_by_enumeration(12, edges, 0, 11);
    for (auto order : {SearchOrder::breadth_first, SearchOrder::depth_first,
                       SearchOrder::level_blocking}) {
      ResidualState state(make_network(12, edges, 0, 11));
      EXPECT_EQ(state.max_flow(order), cut) << "trial " << trial;
      EXPECT_FALSE(sink_reachable(state));
      EXPECT_FALSE(state.has_augmenting_path());
    }
  }
}

TEST(MaxFlow, ResidualCapacitiesStayComplementary) {
  std::mt19937_64 rng(5);
  auto edges = random_dag(12, 0.4, rng);
  ResidualState state(make_network(12, edges, 0, 11));
  state.max_flow();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto id = static_cast<EdgeId>(e);
    EXPECT_EQ(state.residual(id, true) + state.residual(id, false), 1);
  }
  int out_of_source = 0;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].first == 0 && state.saturated(static_cast<EdgeId>(e))) ++out_of_source;
  EXPECT_EQ(out_of_source, state.flow_value());
}

TEST(MaxFlow, BoundedBySourceAndSinkDegree) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto edges = random_dag(12, 0.3, rng);
    int out_s = 0, in_t = 0;
    for (auto [a, b] : edges) {
      out_s += a == 0;
      in_t += b == 11;
    }
    ResidualState state(make_network(12, edges, 0, 11));
    EXPECT_LE(state.max_flow(), std::min(out_s, in_t));
  }
}

TEST(MaxFlow, DormantEdgesCarryNothingUntilEnabled) {
  FlowNetwork::Builder b(4);
  b.add_edge(0, 1);
  const EdgeId gate = b.add_edge(1, 2, false);
  b.add_edge(2, 3);
  ResidualState state(std::make_shared<const FlowNetwork>(std::move(b).build(0, 3)));
  EXPECT_EQ(state.max_flow(), 0);
  EXPECT_EQ(state.residual(gate, true), 0);
  EXPECT_TRUE(state.enable(gate));
  EXPECT_FALSE(state.enable(gate));
  EXPECT_EQ(state.max_flow(), 1);
}

TEST(MaxFlow, IncrementReusesFlowThroughReverseArcs) {
  // s=0 q=1 a=2 b=3 c=4 d=5 e=6 x=7 f=8 g=9. The first search routes a through
  // c; the late arrival x can only reach q through c, which forces a to move
  // over to g.
  FlowNetwork::Builder b(10);
  b.add_edge(0, 2);
  b.add_edge(0, 3);
  b.add_edge(0, 6);
  const EdgeId a_c = b.add_edge(2, 4);
  b.add_edge(2, 9);
  b.add_edge(3, 5);
  b.add_edge(6, 8);
  const EdgeId x_c = b.add_edge(7, 4);
  b.add_edge(4, 1);
  b.add_edge(5, 1);
  b.add_edge(8, 1);
  b.add_edge(9, 1);
  const EdgeId s_x = b.add_edge(0, 7, false);
  auto g = std::make_shared<const FlowNetwork>(std::move(b).build(0, 1));

  ResidualState base(g);
  const int f1 = base.max_flow();
  EXPECT_EQ(f1, 3);
  EXPECT_TRUE(base.saturated(a_c));

  ResidualState scratch(g);
  scratch.enable(s_x);
  const int f2 = scratch.max_flow();
  EXPECT_EQ(f2, 4);

  base.enable(s_x);
  const int f3 = base.max_flow();
  EXPECT_EQ(f3, f2 - f1);
  EXPECT_EQ(f3, 1);
  EXPECT_FALSE(base.saturated(a_c));
  EXPECT_TRUE(base.saturated(x_c));
}

TEST(MaxFlow, EnablingEdgeInsideExhaustedRegionReopensIt) {
  // s=0 a=1 b=2 c=3 q=4. The first search fails after exploring a and c; a
  // later edge out of a must make them searchable again.
  FlowNetwork::Builder b(5);
  b.add_edge(0, 1);
  b.add_edge(0, 3);
  b.add_edge(3, 1);
  b.add_edge(2, 4);
  const EdgeId late = b.add_edge(0, 2, false);
  const EdgeId gate = b.add_edge(1, 4, false);
  ResidualState state(std::make_shared<const FlowNetwork>(std::move(b).build(0, 4)));
  EXPECT_EQ(state.max_flow(), 0);
  state.enable(late);
  EXPECT_EQ(state.max_flow(), 1);
  state.enable(gate);
  EXPECT_EQ(state.max_flow(SearchOrder::level_blocking), 1);
  EXPECT_EQ(state.flow_value(), 2);
  EXPECT_FALSE(sink_reachable(state));
}

TEST(CloneState, CopyIsIndependent) {
  std::mt19937_64 rng(77);
  auto edges = random_dag(10, 0.4, rng);
  edges.emplace_back(0, 9);
  ResidualState original(make_network(10, edges, 0, 9));
  const std::size_t before = std::hash<std::string>{}(original.to_json().dump());
  ResidualState copy = clone_state(original);
  copy.max_flow();
  EXPECT_EQ(original.flow_value(), 0);
  EXPECT_EQ(std::hash<std::string>{}(original.to_json().dump()), before);
  EXPECT_NE(copy.to_json().dump(), original.to_json().dump());
}

TEST(CloneState, EmptyCopyIsEmpty) {
  TemporalNetwork net(3, {{}}, true);
  LayeredFlowGraph layered(net);
  ResidualState copy = clone_state(layered.initial_state());
  EXPECT_EQ(copy.flow_value(), 0);
  EXPECT_EQ(copy.to_json()["flow"], 0);
  for (NodeId v = 0; v < 3; ++v) EXPECT_FALSE(is_attached(copy, layered, v));
}

TEST(ResidualState, JsonDumpListsResidualBits) {
  ResidualState state(make_network(3, {{0, 1}, {1, 2}}, 0, 2));
  state.max_flow();
  auto doc = state.to_json();
  EXPECT_EQ(doc["flow"], 1);
  ASSERT_EQ(doc["edges"].size(), 2u);
  EXPECT_EQ(doc["edges"][0], nlohmann::json({0, 1, true, 0, 1}));
}

TEST(OnlineMaxflow, FirstDriverGivesItsOwnValue) {
  auto net = random_temporal(8, 4, 0.3, 1);
  LayeredFlowGraph layered(net);
  for (NodeId v = 0; v < 8; ++v) {
    auto state = layered.initial_state();
    EXPECT_EQ(online_maxflow(state, layered, v), controllable_dimension(layered, DriverSet{v}));
  }
}

TEST(OnlineMaxflow, IncrementEqualsScratchDifference) {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto net = random_temporal(8, 4, 0.3, seed);
    LayeredFlowGraph layered(net);
    std::vector<NodeId> order(8);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t size = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    DriverSet d(std::vector<NodeId>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size)));
    const NodeId v = order[size];

    auto state = layered.initial_state();
    for (NodeId u : d) online_maxflow(state, layered, u);
    const int fd = controllable_dimension(layered, d);
    ASSERT_EQ(state.flow_value(), fd);
    DriverSet dv = d;
    dv.insert(v);
    EXPECT_EQ(online_maxflow(state, layered, v), controllable_dimension(layered, dv) - fd);
  }
}

TEST(OnlineMaxflow, AnyAdditionOrderReachesScratchValue) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto net = random_temporal(10, 6, 0.15, 100 + seed, seed % 3 != 0);
    LayeredFlowGraph layered(net);
    std::vector<NodeId> order(10);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto state = layered.initial_state();
    DriverSet d;
    for (NodeId v : order) {
      const auto search = static_cast<SearchOrder>(v % 3);
      online_maxflow(state, layered, v, search);
      d.insert(v);
      ASSERT_EQ(state.flow_value(), controllable_dimension(layered, d)) << "seed " << seed;
      ASSERT_FALSE(sink_reachable(state));
    }
  }
}

TEST(OnlineMaxflow, RejectsAttachedDriverAndForeignState) {
  TemporalNetwork net(3, {{{0, 1}}}, true);
  LayeredFlowGraph layered(net);
  auto state = layered.initial_state();
  online_maxflow(state, layered, 0);
  EXPECT_TRUE(is_attached(state, layered, 0));
  EXPECT_THROW(online_maxflow(state, layered, 0), std::invalid_argument);
  LayeredFlowGraph other(net);
  auto foreign = other.initial_state();
  EXPECT_THROW(online_maxflow(foreign, layered, 1), std::invalid_argument);
}
