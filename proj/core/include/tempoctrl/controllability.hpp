#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "tempoctrl/flow_network.hpp"
#include "tempoctrl/layered_graph.hpp"
#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl {

/// Sorted set of driver node ids.
class DriverSet {
 public:
  DriverSet() = default;
  DriverSet(std::initializer_list<NodeId> nodes);
  /// Throws std::invalid_argument on duplicate or negative ids.
  explicit DriverSet(std::vector<NodeId> nodes);

  static DriverSet all(std::size_t node_count);

  bool contains(NodeId v) const;
  /// Returns false if `v` was already present.
  bool insert(NodeId v);
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::span<const NodeId> nodes() const { return nodes_; }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

  friend bool operator==(const DriverSet&, const DriverSet&) = default;
  friend auto operator<=>(const DriverSet& a, const DriverSet& b) { return a.nodes_ <=> b.nodes_; }

 private:
  std::vector<NodeId> nodes_;
};

/// Dimension of the maximum controllable subspace of `drivers`: the max-flow
/// value of the layered graph with every driver attached at every layer.
/// Always in [0, N].
int controllable_dimension(const LayeredFlowGraph& layered, const DriverSet& drivers,
                           SearchOrder order = SearchOrder::level_blocking);
int controllable_dimension(const TemporalNetwork& net, const DriverSet& drivers);

bool is_fully_controllable(const TemporalNetwork& net, const DriverSet& drivers);

/// Incremental evaluation of f over a growing driver set. Holds the residual
/// graph of the current set so each addition only searches new paths.
class ControllabilitySession {
 public:
  explicit ControllabilitySession(std::shared_ptr<const LayeredFlowGraph> layered);

  const LayeredFlowGraph& layered() const { return *layered_; }
  const std::shared_ptr<const LayeredFlowGraph>& shared_layered() const { return layered_; }

  /// f of the current driver set.
  int value() const { return residual_.flow_value(); }
  const DriverSet& drivers() const { return drivers_; }
  const ResidualState& residual() const { return residual_; }

  /// Marginal gain of `v` computed on a copy of the residual. The session is
  /// unchanged; the returned state can be handed to adopt().
  std::pair<int, ResidualState> probe(NodeId v) const;

  /// Adds `v` and returns its marginal gain.
  int add_driver(NodeId v);

  /// Adds `v` using a residual previously returned by probe(v) on the current
  /// driver set.
  void adopt(NodeId v, ResidualState probed);

 private:
  std::shared_ptr<const LayeredFlowGraph> layered_;
  ResidualState residual_;
  DriverSet drivers_;
};

/// From-scratch evaluation of f with memoization keyed by the sorted driver set.
class SetFunction {
 public:
  explicit SetFunction(const TemporalNetwork& net);
  explicit SetFunction(std::shared_ptr<const LayeredFlowGraph> layered);

  int operator()(const DriverSet& drivers);
  std::size_t node_count() const { return layered_->node_count(); }
  const LayeredFlowGraph& layered() const { return *layered_; }

  /// Max-flow computations performed (cache misses).
  std::size_t evaluations() const { return evaluations_; }
  std::size_t cache_hits() const { return cache_hits_; }

 private:
  std::shared_ptr<const LayeredFlowGraph> layered_;
  std::map<DriverSet, int> cache_;
  std::size_t evaluations_ = 0;
  std::size_t cache_hits_ = 0;
};

struct SubmodularityViolation {
  DriverSet smaller;  // P
  DriverSet larger;   // Q, with P a subset of Q
  NodeId element;     // x, outside Q
  int gain_smaller;   // f(P + x) - f(P)
  int gain_larger;    // f(Q + x) - f(Q)
};

struct SubmodularityReport {
  std::size_t trials = 0;
  std::size_t submodular_violations = 0;
  std::size_t monotone_violations = 0;
  std::vector<SubmodularityViolation> examples;  // at most a handful
};

/// Samples random triples P subset Q, x not in Q and checks diminishing returns
/// f(P + x) - f(P) >= f(Q + x) - f(Q) together with monotonicity.
SubmodularityReport check_submodular(const TemporalNetwork& net, std::size_t trials,
                                     std::uint64_t seed);

}  // namespace tempoctrl
