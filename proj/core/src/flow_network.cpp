#include "tempoctrl/flow_network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tempoctrl {

namespace {

// Per-thread scratch buffers for path searches. Visits are tracked with epoch
// stamps so a search never has to clear O(V) memory.
struct SearchWorkspace {
  std::vector<std::uint32_t> stamp;
  std::vector<const FlowNetwork::Arc*> parent;
  std::vector<FlowNodeId> frontier;
  std::vector<FlowNodeId> seen;
  std::vector<std::uint32_t> cursor;
  std::vector<std::int32_t> level;
  std::uint32_t epoch = 0;

  void prepare(std::size_t nodes) {
    if (stamp.size() < nodes) {
      stamp.assign(nodes, 0);
      parent.resize(nodes);
      cursor.resize(nodes);
      level.resize(nodes);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    frontier.clear();
    seen.clear();
  }
  bool marked(FlowNodeId v) const { return stamp[static_cast<std::size_t>(v)] == epoch; }
  void mark(FlowNodeId v) {
    stamp[static_cast<std::size_t>(v)] = epoch;
    seen.push_back(v);
  }
};

SearchWorkspace& workspace() {
  thread_local SearchWorkspace ws;
  return ws;
}

constexpr std::int32_t kDeadEnd = -1;

}  // namespace

FlowNetwork::Builder::Builder(std::size_t node_count) : node_count_(node_count) {}

EdgeId FlowNetwork::Builder::add_edge(FlowNodeId tail, FlowNodeId head, bool enabled) {
  const auto n = static_cast<FlowNodeId>(node_count_);
  if (tail < 0 || tail >= n || head < 0 || head >= n)
    throw std::invalid_argument("flow edge endpoint out of range");
  tails_.push_back(tail);
  heads_.push_back(head);
  enabled_.push_back(enabled);
  return static_cast<EdgeId>(tails_.size() - 1);
}

FlowNetwork FlowNetwork::Builder::build(FlowNodeId source, FlowNodeId sink) && {
  const auto n = static_cast<FlowNodeId>(node_count_);
  if (source < 0 || source >= n || sink < 0 || sink >= n)
    throw std::invalid_argument("source or sink out of range");
  if (source == sink) throw std::invalid_argument("source and sink must differ");

  FlowNetwork g;
  g.source_ = source;
  g.sink_ = sink;
  g.tails_ = std::move(tails_);
  g.heads_ = std::move(heads_);
  g.enabled_ = std::move(enabled_);

  std::vector<std::size_t> degree(node_count_ + 1, 0);
  for (std::size_t e = 0; e < g.tails_.size(); ++e) {
    ++degree[static_cast<std::size_t>(g.tails_[e])];
    ++degree[static_cast<std::size_t>(g.heads_[e])];
  }
  g.offsets_.assign(node_count_ + 1, 0);
  for (std::size_t v = 0; v < node_count_; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.arcs_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t e = 0; e < g.tails_.size(); ++e) {
    const auto id = static_cast<EdgeId>(e);
    const auto t = static_cast<std::size_t>(g.tails_[e]);
    const auto h = static_cast<std::size_t>(g.heads_[e]);
    g.arcs_[fill[t]++] = Arc{g.heads_[e], id, true};
    g.arcs_[fill[h]++] = Arc{g.tails_[e], id, false};
  }
  for (std::size_t v = 0; v < node_count_; ++v) {
    std::sort(g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.arcs_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Arc& a, const Arc& b) {
                if (a.to != b.to) return a.to < b.to;
                if (a.edge != b.edge) return a.edge < b.edge;
                return a.forward && !b.forward;
              });
  }
  return g;
}

ResidualState::ResidualState(std::shared_ptr<const FlowNetwork> network)
    : network_(std::move(network)) {
  if (!network_) throw std::invalid_argument("residual state needs a network");
  const std::size_t m = network_->edge_count();
  enabled_.resize(m);
  flow_.assign(m, false);
  dead_.assign(network_->node_count(), false);
  for (std::size_t e = 0; e < m; ++e) enabled_[e] = network_->initially_enabled(static_cast<EdgeId>(e));
}

int ResidualState::residual(EdgeId e, bool forward) const {
  const auto i = static_cast<std::size_t>(e);
  if (forward) return (enabled_[i] && !flow_[i]) ? 1 : 0;
  return flow_[i] ? 1 : 0;
}

bool ResidualState::enable(EdgeId e) {
  const auto i = static_cast<std::size_t>(e);
  if (i >= enabled_.size()) throw std::out_of_range("edge id out of range");
  if (enabled_[i]) return false;
  enabled_[i] = true;
  // A new arc out of the closed set (other than from the source) may open a
  // path, so the set is dropped.
  const FlowNodeId tail = network_->tail(e);
  if (tail != network_->source() && dead_[static_cast<std::size_t>(tail)])
    dead_.assign(dead_.size(), false);
  return true;
}

void ResidualState::absorb_exhausted_search() {
  const FlowNodeId s = network_->source();
  for (FlowNodeId v : workspace().seen)
    if (v != s) dead_[static_cast<std::size_t>(v)] = true;
}

bool ResidualState::augment_once(SearchOrder order) {
  const FlowNetwork& g = *network_;
  auto& ws = workspace();
  ws.prepare(g.node_count());
  const FlowNodeId s = g.source();
  const FlowNodeId q = g.sink();

  auto open = [&](const FlowNetwork::Arc& a) {
    const auto i = static_cast<std::size_t>(a.edge);
    return a.forward ? (enabled_[i] && !flow_[i]) : static_cast<bool>(flow_[i]);
  };
  auto skip = [&](FlowNodeId v) { return ws.marked(v) || dead_[static_cast<std::size_t>(v)]; };

  bool found = false;
  ws.mark(s);
  if (order == SearchOrder::depth_first) {
    ws.frontier.push_back(s);
    ws.cursor[static_cast<std::size_t>(s)] = 0;
    while (!ws.frontier.empty() && !found) {
      const FlowNodeId u = ws.frontier.back();
      const auto arcs = g.arcs(u);
      auto& c = ws.cursor[static_cast<std::size_t>(u)];
      bool advanced = false;
      while (c < arcs.size()) {
        const auto& a = arcs[c++];
        if (skip(a.to) || !open(a)) continue;
        ws.mark(a.to);
        ws.parent[static_cast<std::size_t>(a.to)] = &a;
        if (a.to == q) {
          found = true;
        } else {
          ws.cursor[static_cast<std::size_t>(a.to)] = 0;
          ws.frontier.push_back(a.to);
        }
        advanced = true;
        break;
      }
      if (!advanced) ws.frontier.pop_back();
    }
  } else {
    ws.frontier.push_back(s);
    for (std::size_t head = 0; head < ws.frontier.size() && !found; ++head) {
      const FlowNodeId u = ws.frontier[head];
      for (const auto& a : g.arcs(u)) {
        if (skip(a.to) || !open(a)) continue;
        ws.mark(a.to);
        ws.parent[static_cast<std::size_t>(a.to)] = &a;
        if (a.to == q) {
          found = true;
          break;
        }
        ws.frontier.push_back(a.to);
      }
    }
  }
  if (!found) {
    absorb_exhausted_search();
    return false;
  }

  for (FlowNodeId v = q; v != s;) {
    const auto* a = ws.parent[static_cast<std::size_t>(v)];
    flow_[static_cast<std::size_t>(a->edge)] = a->forward;
    v = a->forward ? g.tail(a->edge) : g.head(a->edge);
  }
  ++flow_value_;
  return true;
}

int ResidualState::augment_phase() {
  const FlowNetwork& g = *network_;
  auto& ws = workspace();
  ws.prepare(g.node_count());
  const FlowNodeId s = g.source();
  const FlowNodeId q = g.sink();

  auto open = [&](const FlowNetwork::Arc& a) {
    const auto i = static_cast<std::size_t>(a.edge);
    return a.forward ? (enabled_[i] && !flow_[i]) : static_cast<bool>(flow_[i]);
  };

  // Level graph by breadth-first search.
  ws.mark(s);
  ws.level[static_cast<std::size_t>(s)] = 0;
  ws.cursor[static_cast<std::size_t>(s)] = 0;
  ws.frontier.push_back(s);
  bool reached = false;
  for (std::size_t head = 0; head < ws.frontier.size(); ++head) {
    const FlowNodeId u = ws.frontier[head];
    const std::int32_t next = ws.level[static_cast<std::size_t>(u)] + 1;
    if (reached && next > ws.level[static_cast<std::size_t>(q)]) break;
    for (const auto& a : g.arcs(u)) {
      if (ws.marked(a.to) || dead_[static_cast<std::size_t>(a.to)] || !open(a)) continue;
      ws.mark(a.to);
      ws.level[static_cast<std::size_t>(a.to)] = next;
      ws.cursor[static_cast<std::size_t>(a.to)] = 0;
      if (a.to == q) reached = true;
      ws.frontier.push_back(a.to);
    }
  }
  if (!reached) {
    absorb_exhausted_search();
    return 0;
  }

  // Blocking flow with current-arc pointers; every sink hit is one augmenting
  // path.
  int augmented = 0;
  std::vector<FlowNodeId>& stack = ws.frontier;
  stack.clear();
  stack.push_back(s);
  while (!stack.empty()) {
    const FlowNodeId u = stack.back();
    if (u == q) {
      for (FlowNodeId v = q; v != s;) {
        const auto* a = ws.parent[static_cast<std::size_t>(v)];
        flow_[static_cast<std::size_t>(a->edge)] = a->forward;
        v = a->forward ? g.tail(a->edge) : g.head(a->edge);
      }
      ++flow_value_;
      ++augmented;
      stack.resize(1);
      continue;
    }
    const auto ui = static_cast<std::size_t>(u);
    const auto arcs = g.arcs(u);
    auto& c = ws.cursor[ui];
    bool advanced = false;
    for (; c < arcs.size(); ++c) {
      const auto& a = arcs[c];
      const auto to = static_cast<std::size_t>(a.to);
      if (!ws.marked(a.to) || ws.level[to] != ws.level[ui] + 1 || !open(a)) continue;
      ws.parent[to] = &a;
      stack.push_back(a.to);
      advanced = true;
      break;
    }
    if (!advanced) {
      ws.level[ui] = kDeadEnd;
      stack.pop_back();
      if (!stack.empty()) ++ws.cursor[static_cast<std::size_t>(stack.back())];
    }
  }
  return augmented;
}

int ResidualState::max_flow(SearchOrder order) {
  int increment = 0;
  if (order == SearchOrder::level_blocking) {
    while (int phase = augment_phase()) increment += phase;
  } else {
    while (augment_once(order)) ++increment;
  }
  return increment;
}

bool ResidualState::has_augmenting_path() const {
  ResidualState probe = *this;
  return probe.augment_once(SearchOrder::breadth_first);
}

nlohmann::json ResidualState::to_json() const {
  const FlowNetwork& g = *network_;
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto id = static_cast<EdgeId>(e);
    edges.push_back({g.tail(id), g.head(id), static_cast<bool>(enabled_[e]), residual(id, true),
                     residual(id, false)});
  }
  return {{"nodes", g.node_count()}, {"source", g.source()}, {"sink", g.sink()},
          {"flow", flow_value_}, {"edges", std::move(edges)}};
}

}  // namespace tempoctrl
