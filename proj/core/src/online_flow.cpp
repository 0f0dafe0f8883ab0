#include "tempoctrl/online_flow.hpp"

#include <stdexcept>
#include <string>

namespace tempoctrl {

bool is_attached(const ResidualState& state, const LayeredFlowGraph& layered, NodeId driver) {
  const auto edges = layered.driver_edges(driver);
  return !edges.empty() && state.enabled(edges.front());
}

int online_maxflow(ResidualState& state, const LayeredFlowGraph& layered, NodeId new_driver,
                   SearchOrder order) {
  if (&state.network() != &layered.network())
    throw std::invalid_argument("residual state belongs to a different layered graph");
  if (is_attached(state, layered, new_driver))
    throw std::invalid_argument("driver " + std::to_string(new_driver) + " is already attached");
  for (EdgeId e : layered.driver_edges(new_driver)) state.enable(e);
  return state.max_flow(order);
}

}  // namespace tempoctrl
