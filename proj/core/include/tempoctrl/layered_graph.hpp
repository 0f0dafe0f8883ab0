#pragma once

#include <memory>
#include <span>
#include <vector>

#include "tempoctrl/flow_network.hpp"
#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl {

/// Split-node, time-layered flow graph of a TemporalNetwork.
///
/// Layers are numbered 0..steps() (absolute time t0 + layer). Every pair
/// (node, layer) becomes an in-copy and an out-copy joined by a unit edge.
/// A temporal edge (i, j) in snapshot k joins out(i, k) to in(j, k + 1); with
/// state retention out(i, k) also feeds in(i, k + 1). Every out-copy at the last
/// layer feeds the sink. The source owns one dormant edge to in(v, layer) for
/// every node and layer; attaching a driver enables that node's edges.
///
/// Flow node ids are layer-major, node-minor, in-copy before out-copy:
/// in(v, l) = 2 (l N + v), out(v, l) = in(v, l) + 1, then source and sink.
class LayeredFlowGraph {
 public:
  explicit LayeredFlowGraph(const TemporalNetwork& net);

  const TemporalNetwork& temporal() const { return net_; }
  const FlowNetwork& network() const { return *network_; }
  const std::shared_ptr<const FlowNetwork>& shared_network() const { return network_; }

  std::size_t node_count() const { return net_.node_count(); }
  std::size_t layer_count() const { return net_.steps() + 1; }

  FlowNodeId in_copy(NodeId v, std::size_t layer) const;
  FlowNodeId out_copy(NodeId v, std::size_t layer) const { return in_copy(v, layer) + 1; }
  FlowNodeId source() const { return network_->source(); }
  FlowNodeId sink() const { return network_->sink(); }

  /// Dormant source edges of `v`, one per layer, in layer order.
  std::span<const EdgeId> driver_edges(NodeId v) const;

  /// Flow edge carrying temporal edge `temporal_edges()[i]`.
  std::span<const EdgeId> transition_edges() const { return transition_edges_; }

  std::size_t internal_edge_count() const { return internal_edges_; }
  std::size_t transition_edge_count() const { return transition_edges_.size(); }
  std::size_t retention_edge_count() const { return retention_edges_; }
  std::size_t sink_edge_count() const { return sink_edges_; }
  std::size_t source_edge_count() const { return driver_edges_.size(); }

  /// Residual graph with no driver attached and zero flow.
  ResidualState initial_state() const { return ResidualState(network_); }

 private:
  TemporalNetwork net_;
  std::shared_ptr<const FlowNetwork> network_;
  std::vector<EdgeId> driver_edges_;
  std::vector<EdgeId> transition_edges_;
  std::size_t internal_edges_ = 0;
  std::size_t retention_edges_ = 0;
  std::size_t sink_edges_ = 0;
};

}  // namespace tempoctrl
