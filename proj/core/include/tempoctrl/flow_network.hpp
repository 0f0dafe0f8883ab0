#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace tempoctrl {

using FlowNodeId = std::int32_t;
using EdgeId = std::int32_t;

/// Immutable unit-capacity directed graph with a designated source and sink.
///
/// Every edge has capacity one. An edge may be created dormant (not yet part of
/// the network); a ResidualState can later enable it, which is how driver
/// attachments are added without rebuilding the topology.
class FlowNetwork {
 public:
  /// One residual arc: the forward direction of `edge` or its reverse.
  struct Arc {
    FlowNodeId to;
    EdgeId edge;
    bool forward;
  };

  class Builder {
   public:
    explicit Builder(std::size_t node_count);
    EdgeId add_edge(FlowNodeId tail, FlowNodeId head, bool enabled = true);
    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return tails_.size(); }
    /// Throws std::invalid_argument if source == sink or either is out of range.
    FlowNetwork build(FlowNodeId source, FlowNodeId sink) &&;

   private:
    std::size_t node_count_;
    std::vector<FlowNodeId> tails_;
    std::vector<FlowNodeId> heads_;
    std::vector<bool> enabled_;
  };

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return tails_.size(); }
  FlowNodeId source() const { return source_; }
  FlowNodeId sink() const { return sink_; }
  FlowNodeId tail(EdgeId e) const { return tails_[static_cast<std::size_t>(e)]; }
  FlowNodeId head(EdgeId e) const { return heads_[static_cast<std::size_t>(e)]; }
  bool initially_enabled(EdgeId e) const { return enabled_[static_cast<std::size_t>(e)]; }

  /// Residual arcs leaving `v` (forward arcs of out-edges and reverse arcs of
  /// in-edges), ordered by neighbor id, then edge id.
  std::span<const Arc> arcs(FlowNodeId v) const {
    const auto i = static_cast<std::size_t>(v);
    return {arcs_.data() + offsets_[i], arcs_.data() + offsets_[i + 1]};
  }

 private:
  FlowNetwork() = default;

  FlowNodeId source_ = 0;
  FlowNodeId sink_ = 0;
  std::vector<FlowNodeId> tails_;
  std::vector<FlowNodeId> heads_;
  std::vector<bool> enabled_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

enum class SearchOrder {
  /// One breadth-first search per augmenting path (shortest paths first).
  breadth_first,
  /// One depth-first search per augmenting path.
  depth_first,
  /// Breadth-first level graph, then every shortest path it holds, repeated
  /// until the sink is cut off.
  level_blocking,
};

/// Residual graph of a unit-capacity flow on a shared FlowNetwork.
///
/// Each enabled edge carries either zero or one unit of flow; its forward
/// residual is 1 - flow and its backward residual is flow, so the two always sum
/// to one. Copies are independent and cheap (two bits per edge plus one bit per
/// node).
///
/// The state also remembers a closed set of nodes that the last exhausted search
/// reached from the source. No residual arc leaves that set and the sink is not
/// in it, so later searches skip it; attaching new source edges keeps it valid,
/// which makes incremental augmentation proportional to the new territory.
class ResidualState {
 public:
  explicit ResidualState(std::shared_ptr<const FlowNetwork> network);

  const FlowNetwork& network() const { return *network_; }
  const std::shared_ptr<const FlowNetwork>& shared_network() const { return network_; }

  /// Current s-q flow value.
  int flow_value() const { return flow_value_; }

  bool enabled(EdgeId e) const { return enabled_[static_cast<std::size_t>(e)]; }
  bool saturated(EdgeId e) const { return flow_[static_cast<std::size_t>(e)]; }
  int residual(EdgeId e, bool forward) const;

  /// Adds a dormant edge to the network. Returns false if it was already enabled.
  bool enable(EdgeId e);

  /// Augments along s-q paths until none is left. Returns the number of
  /// augmentations performed, i.e. the increase of flow_value().
  int max_flow(SearchOrder order = SearchOrder::breadth_first);

  bool has_augmenting_path() const;

  /// Debug dump: {source, sink, flow, edges: [[tail, head, enabled, fwd, bwd], ...]}.
  nlohmann::json to_json() const;

 private:
  bool augment_once(SearchOrder order);
  int augment_phase();
  void absorb_exhausted_search();

  std::shared_ptr<const FlowNetwork> network_;
  std::vector<bool> enabled_;
  std::vector<bool> flow_;
  std::vector<bool> dead_;
  int flow_value_ = 0;
};

/// Independent deep copy of `state`; mutating one never affects the other.
inline ResidualState clone_state(const ResidualState& state) { return state; }

}  // namespace tempoctrl
