#include "tempoctrl/layered_graph.hpp"

#include <limits>
#include <stdexcept>

namespace tempoctrl {

LayeredFlowGraph::LayeredFlowGraph(const TemporalNetwork& net) : net_(net) {
  const std::size_t n = net.node_count();
  const std::size_t layers = net.steps() + 1;
  const std::size_t copies = 2 * n * layers;
  if (copies + 2 > static_cast<std::size_t>(std::numeric_limits<FlowNodeId>::max()))
    throw std::length_error("layered graph too large");

  FlowNetwork::Builder builder(copies + 2);
  const auto source = static_cast<FlowNodeId>(copies);
  const auto sink = static_cast<FlowNodeId>(copies + 1);
  auto in = [n](std::size_t v, std::size_t l) { return static_cast<FlowNodeId>(2 * (l * n + v)); };

  for (std::size_t l = 0; l < layers; ++l)
    for (std::size_t v = 0; v < n; ++v) builder.add_edge(in(v, l), in(v, l) + 1);
  internal_edges_ = n * layers;

  transition_edges_.reserve(net.edge_count());
  for (std::size_t k = 0; k < net.steps(); ++k) {
    for (const Edge& e : net.snapshot(k)) {
      transition_edges_.push_back(builder.add_edge(in(static_cast<std::size_t>(e.source), k) + 1,
                                                   in(static_cast<std::size_t>(e.target), k + 1)));
    }
  }
  if (net.self_loops()) {
    for (std::size_t k = 0; k < net.steps(); ++k)
      for (std::size_t v = 0; v < n; ++v) builder.add_edge(in(v, k) + 1, in(v, k + 1));
    retention_edges_ = n * net.steps();
  }
  for (std::size_t v = 0; v < n; ++v) builder.add_edge(in(v, layers - 1) + 1, sink);
  sink_edges_ = n;

  driver_edges_.reserve(n * layers);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t l = 0; l < layers; ++l)
      driver_edges_.push_back(builder.add_edge(source, in(v, l), /*enabled=*/false));

  network_ = std::make_shared<const FlowNetwork>(std::move(builder).build(source, sink));
}

FlowNodeId LayeredFlowGraph::in_copy(NodeId v, std::size_t layer) const {
  if (v < 0 || static_cast<std::size_t>(v) >= node_count() || layer >= layer_count())
    throw std::out_of_range("layered node out of range");
  return static_cast<FlowNodeId>(2 * (layer * node_count() + static_cast<std::size_t>(v)));
}

std::span<const EdgeId> LayeredFlowGraph::driver_edges(NodeId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= node_count())
    throw std::out_of_range("driver node out of range");
  return std::span<const EdgeId>(driver_edges_).subspan(static_cast<std::size_t>(v) * layer_count(),
                                                         layer_count());
}

}  // namespace tempoctrl
