#include "tempoctrl/controllability.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "tempoctrl/online_flow.hpp"

namespace tempoctrl {

DriverSet::DriverSet(std::initializer_list<NodeId> nodes)
    : DriverSet(std::vector<NodeId>(nodes)) {}

DriverSet::DriverSet(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
    throw std::invalid_argument("driver set contains duplicates");
  if (!nodes_.empty() && nodes_.front() < 0)
    throw std::invalid_argument("driver set contains a negative node id");
}

DriverSet DriverSet::all(std::size_t node_count) {
  std::vector<NodeId> nodes(node_count);
  for (std::size_t i = 0; i < node_count; ++i) nodes[i] = static_cast<NodeId>(i);
  return DriverSet(std::move(nodes));
}

bool DriverSet::contains(NodeId v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

bool DriverSet::insert(NodeId v) {
  if (v < 0) throw std::invalid_argument("negative driver id");
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it != nodes_.end() && *it == v) return false;
  nodes_.insert(it, v);
  return true;
}

int controllable_dimension(const LayeredFlowGraph& layered, const DriverSet& drivers,
                           SearchOrder order) {
  ResidualState state = layered.initial_state();
  for (NodeId v : drivers)
    for (EdgeId e : layered.driver_edges(v)) state.enable(e);
  return state.max_flow(order);
}

int controllable_dimension(const TemporalNetwork& net, const DriverSet& drivers) {
  return controllable_dimension(LayeredFlowGraph(net), drivers);
}

bool is_fully_controllable(const TemporalNetwork& net, const DriverSet& drivers) {
  return controllable_dimension(net, drivers) == static_cast<int>(net.node_count());
}

ControllabilitySession::ControllabilitySession(std::shared_ptr<const LayeredFlowGraph> layered)
    : layered_(std::move(layered)), residual_(layered_->initial_state()) {}

std::pair<int, ResidualState> ControllabilitySession::probe(NodeId v) const {
  ResidualState copy = residual_;
  const int gain = online_maxflow(copy, *layered_, v);
  return {gain, std::move(copy)};
}

int ControllabilitySession::add_driver(NodeId v) {
  const int gain = online_maxflow(residual_, *layered_, v);
  drivers_.insert(v);
  return gain;
}

void ControllabilitySession::adopt(NodeId v, ResidualState probed) {
  if (probed.shared_network() != residual_.shared_network())
    throw std::invalid_argument("probed residual belongs to another graph");
  if (drivers_.contains(v))
    throw std::invalid_argument("driver " + std::to_string(v) + " is already attached");
  if (!is_attached(probed, *layered_, v))
    throw std::invalid_argument("probed residual does not attach driver " + std::to_string(v));
  residual_ = std::move(probed);
  drivers_.insert(v);
}

SetFunction::SetFunction(const TemporalNetwork& net)
    : SetFunction(std::make_shared<const LayeredFlowGraph>(net)) {}

SetFunction::SetFunction(std::shared_ptr<const LayeredFlowGraph> layered)
    : layered_(std::move(layered)) {}

int SetFunction::operator()(const DriverSet& drivers) {
  if (auto it = cache_.find(drivers); it != cache_.end()) {
    ++cache_hits_;
    return it->second;
  }
  ++evaluations_;
  const int value = controllable_dimension(*layered_, drivers);
  cache_.emplace(drivers, value);
  return value;
}

SubmodularityReport check_submodular(const TemporalNetwork& net, std::size_t trials,
                                     std::uint64_t seed) {
  SetFunction f(net);
  std::mt19937_64 rng(seed);
  const auto n = static_cast<NodeId>(net.node_count());
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  std::bernoulli_distribution coin(0.5);

  SubmodularityReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const NodeId x = pick(rng);
    std::vector<NodeId> larger, smaller;
    for (NodeId v = 0; v < n; ++v) {
      if (v == x || !coin(rng)) continue;
      larger.push_back(v);
      if (coin(rng)) smaller.push_back(v);
    }
    DriverSet p(smaller), q(larger);
    DriverSet px = p, qx = q;
    px.insert(x);
    qx.insert(x);
    const int fp = f(p), fpx = f(px), fq = f(q), fqx = f(qx);
    ++report.trials;
    if (fpx < fp || fqx < fq || fq < fp) ++report.monotone_violations;
    if (fpx - fp < fqx - fq) {
      ++report.submodular_violations;
      if (report.examples.size() < 8)
        report.examples.push_back({std::move(p), std::move(q), x, fpx - fp, fqx - fq});
    }
  }
  return report;
}

}  // namespace tempoctrl
