#pragma once

#include "tempoctrl/flow_network.hpp"
#include "tempoctrl/layered_graph.hpp"

namespace tempoctrl {

/// True if `driver`'s source edges are enabled in `state`.
bool is_attached(const ResidualState& state, const LayeredFlowGraph& layered, NodeId driver);

/// Attaches `new_driver` to the source at every layer of a residual that is
/// already at maximum flow for some driver set D, then augments.
///
/// The return value is the max-flow increment f(D + {v}) - f(D), and `state`
/// becomes the maximum-flow residual for D + {v}. Flow placed earlier is reused
/// as is; only the new paths (possibly rerouting old ones) are searched.
///
/// Throws std::invalid_argument if the driver is already attached.
int online_maxflow(ResidualState& state, const LayeredFlowGraph& layered, NodeId new_driver,
                   SearchOrder order = SearchOrder::breadth_first);

}  // namespace tempoctrl
