#include "tempoctrl/detect.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "tempoctrl/online_flow.hpp"

namespace tempoctrl {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Candidate {
  int gain;
  NodeId node;
};

// Higher gain first, lower node id among equal gains.
bool ranks_above(const Candidate& a, const Candidate& b) {
  return a.gain > b.gain || (a.gain == b.gain && a.node < b.node);
}

struct RankLess {
  bool operator()(const Candidate& a, const Candidate& b) const { return ranks_above(b, a); }
};

using CandidateHeap = std::priority_queue<Candidate, std::vector<Candidate>, RankLess>;

[[noreturn]] void uncontrollable() { throw std::runtime_error("uncontrollable instance"); }

void check_node(const GainOracle& oracle, NodeId v) {
  if (v < 0 || static_cast<std::size_t>(v) >= oracle.universe_size())
    throw std::out_of_range("node " + std::to_string(v) + " outside the network");
}

// Commits the seed nodes; returns the per-node selected mask.
std::vector<bool> apply_seed(GainOracle& oracle, std::span<const NodeId> seed,
                             DriverSelection& out) {
  std::vector<bool> selected(oracle.universe_size(), false);
  for (NodeId v : seed) {
    check_node(oracle, v);
    if (selected[static_cast<std::size_t>(v)])
      throw std::invalid_argument("seed contains node " + std::to_string(v) + " twice");
    const int gain = oracle.commit(v);
    selected[static_cast<std::size_t>(v)] = true;
    out.steps.push_back({v, gain, oracle.value(), true, false});
  }
  return selected;
}

}  // namespace

OnlineFlowOracle::OnlineFlowOracle(const TemporalNetwork& net)
    : OnlineFlowOracle(std::make_shared<const LayeredFlowGraph>(net)) {}

OnlineFlowOracle::OnlineFlowOracle(std::shared_ptr<const LayeredFlowGraph> layered)
    : session_(std::move(layered)) {}

int OnlineFlowOracle::evaluate(NodeId v) {
  ++evaluations_;
  auto probed = session_.probe(v);
  const int gain = probed.first;
  pending_.insert_or_assign(v, std::move(probed));
  return gain;
}

int OnlineFlowOracle::commit(NodeId v) {
  int gain = 0;
  if (auto it = pending_.find(v); it != pending_.end()) {
    gain = it->second.first;
    session_.adopt(v, std::move(it->second.second));
  } else {
    ++evaluations_;
    gain = session_.add_driver(v);
  }
  pending_.clear();
  return gain;
}

ScratchFlowOracle::ScratchFlowOracle(const TemporalNetwork& net) : layered_(net) {}

int ScratchFlowOracle::evaluate(NodeId v) {
  if (drivers_.contains(v))
    throw std::invalid_argument("driver " + std::to_string(v) + " is already attached");
  ++evaluations_;
  DriverSet extended = drivers_;
  extended.insert(v);
  const int gain = controllable_dimension(layered_, extended) - value_;
  pending_.insert_or_assign(v, gain);
  return gain;
}

int ScratchFlowOracle::commit(NodeId v) {
  int gain = 0;
  if (auto it = pending_.find(v); it != pending_.end()) {
    gain = it->second;
  } else {
    gain = evaluate(v);
  }
  drivers_.insert(v);
  value_ += gain;
  pending_.clear();
  return gain;
}

std::vector<NodeId> DriverSelection::drivers() const {
  std::vector<NodeId> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.node);
  return out;
}

DriverSet DriverSelection::driver_set() const { return DriverSet(drivers()); }

std::vector<int> DriverSelection::gains() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(s.gain);
  return out;
}

std::vector<int> DriverSelection::f_trace() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(s.value);
  return out;
}

nlohmann::json to_json(const DriverSelection& selection, const TemporalNetwork* net) {
  nlohmann::json doc = {{"algorithm", selection.algorithm},
                        {"target", selection.target},
                        {"drivers", selection.drivers()},
                        {"gains", selection.gains()},
                        {"f_trace", selection.f_trace()},
                        {"evaluations", selection.evaluations},
                        {"elapsed_ms", selection.elapsed_ms}};
  std::vector<bool> repicked, seeded;
  for (const auto& s : selection.steps) {
    repicked.push_back(s.repicked);
    seeded.push_back(s.seeded);
  }
  doc["repicked"] = repicked;
  doc["seeded"] = seeded;
  if (net != nullptr) {
    std::vector<std::string> labels;
    for (NodeId v : selection.drivers()) labels.push_back(net->label(v));
    doc["labels"] = labels;
  }
  return doc;
}

DriverSelection lazy_greedy(GainOracle& oracle, std::span<const NodeId> seed,
                            LazyGreedyOptions options) {
  const auto start = Clock::now();
  DriverSelection out;
  out.algorithm = "otaha";
  out.target = oracle.target();
  auto finish = [&] {
    out.evaluations = oracle.evaluations();
    out.elapsed_ms = elapsed_ms(start);
    return out;
  };

  std::vector<bool> selected = apply_seed(oracle, seed, out);
  if (oracle.value() >= oracle.target()) return finish();

  const auto n = static_cast<NodeId>(oracle.universe_size());
  std::vector<int> gain(static_cast<std::size_t>(n), 0);
  CandidateHeap heap;
  for (NodeId v = 0; v < n; ++v) {
    if (selected[static_cast<std::size_t>(v)]) continue;
    gain[static_cast<std::size_t>(v)] = oracle.evaluate(v);
    heap.push({gain[static_cast<std::size_t>(v)], v});
  }

  // Marks nodes refreshed during the current iteration.
  std::vector<std::size_t> picked_in(static_cast<std::size_t>(n), 0);
  for (std::size_t iteration = 1;; ++iteration) {
    if (heap.empty()) uncontrollable();
    NodeId chosen = 0;
    int delta = 0;
    bool repick = false;
    if (iteration == 1) {
      // Initialization already produced exact gains for the current set.
      chosen = heap.top().node;
      delta = heap.top().gain;
      heap.pop();
    } else {
      for (;;) {
        const Candidate top = heap.top();
        heap.pop();
        const auto idx = static_cast<std::size_t>(top.node);
        if (picked_in[idx] == iteration) {
          chosen = top.node;
          delta = options.strict ? oracle.evaluate(top.node) : gain[idx];
          repick = true;
          break;
        }
        delta = oracle.evaluate(top.node);
        gain[idx] = delta;
        picked_in[idx] = iteration;
        if (heap.empty() || ranks_above({delta, top.node}, heap.top())) {
          chosen = top.node;
          break;
        }
        heap.push({delta, top.node});
      }
    }
    if (delta <= 0) uncontrollable();
    const int committed = oracle.commit(chosen);
    selected[static_cast<std::size_t>(chosen)] = true;
    out.steps.push_back({chosen, committed, oracle.value(), false, repick});
    if (oracle.value() >= oracle.target()) return finish();
  }
}

DriverSelection plain_greedy(GainOracle& oracle, std::span<const NodeId> seed) {
  const auto start = Clock::now();
  DriverSelection out;
  out.algorithm = "greedy";
  out.target = oracle.target();
  std::vector<bool> selected = apply_seed(oracle, seed, out);
  const auto n = static_cast<NodeId>(oracle.universe_size());
  while (oracle.value() < oracle.target()) {
    std::optional<Candidate> best;
    for (NodeId v = 0; v < n; ++v) {
      if (selected[static_cast<std::size_t>(v)]) continue;
      const Candidate c{oracle.evaluate(v), v};
      if (!best || ranks_above(c, *best)) best = c;
    }
    if (!best || best->gain <= 0) uncontrollable();
    const int committed = oracle.commit(best->node);
    selected[static_cast<std::size_t>(best->node)] = true;
    out.steps.push_back({best->node, committed, oracle.value(), false, false});
  }
  out.evaluations = oracle.evaluations();
  out.elapsed_ms = elapsed_ms(start);
  return out;
}

DriverSelection otaha(const TemporalNetwork& net, std::span<const NodeId> seed,
                      LazyGreedyOptions options) {
  const auto start = Clock::now();
  OnlineFlowOracle oracle(net);
  DriverSelection out = lazy_greedy(oracle, seed, options);
  out.elapsed_ms = elapsed_ms(start);
  return out;
}

DriverSelection greedy_baseline(const TemporalNetwork& net) {
  const auto start = Clock::now();
  ScratchFlowOracle oracle(net);
  DriverSelection out = plain_greedy(oracle);
  out.elapsed_ms = elapsed_ms(start);
  return out;
}

namespace {

// Depth-first walk over the k-subsets of [0, n) in lexicographic order. The
// residual for each prefix is extended incrementally from its parent's.
class SubsetSearch {
 public:
  SubsetSearch(const LayeredFlowGraph& layered, std::size_t k, bool first_only,
               BruteForceResult& result)
      : layered_(layered),
        k_(k),
        target_(static_cast<int>(layered.node_count())),
        per_driver_(static_cast<int>(layered.layer_count())),
        first_only_(first_only),
        result_(result) {}

  void run() {
    ResidualState root = layered_.initial_state();
    recurse(root, 0);
  }

 private:
  bool recurse(const ResidualState& state, NodeId next) {
    const std::size_t depth = prefix_.size();
    if (depth == k_) {
      if (state.flow_value() == target_) {
        result_.optimal_sets.emplace_back(prefix_);
        if (first_only_) return true;
      }
      return false;
    }
    // A driver adds at most one unit per layer.
    const auto remaining = static_cast<long long>(k_ - depth);
    if (state.flow_value() + remaining * per_driver_ < target_) return false;
    const auto n = static_cast<NodeId>(layered_.node_count());
    for (NodeId v = next; v + static_cast<NodeId>(remaining) <= n; ++v) {
      ResidualState child = state;
      ++result_.evaluations;
      online_maxflow(child, layered_, v);
      prefix_.push_back(v);
      const bool stop = recurse(child, v + 1);
      prefix_.pop_back();
      if (stop) return true;
    }
    return false;
  }

  const LayeredFlowGraph& layered_;
  std::size_t k_;
  int target_;
  int per_driver_;
  bool first_only_;
  BruteForceResult& result_;
  std::vector<NodeId> prefix_;
};

}  // namespace

BruteForceResult brute_force(const TemporalNetwork& net, const BruteForceOptions& options) {
  if (net.node_count() > options.node_limit && !options.allow_large)
    throw std::length_error("brute force refused: " + std::to_string(net.node_count()) +
                            " nodes exceed the limit of " + std::to_string(options.node_limit));
  const LayeredFlowGraph layered(net);
  BruteForceResult result;
  const std::size_t limit = std::min(net.node_count(), options.max_size.value_or(net.node_count()));
  for (std::size_t k = 1; k <= limit; ++k) {
    SubsetSearch(layered, k, options.first_only, result).run();
    if (!result.optimal_sets.empty()) {
      result.minimum_size = k;
      break;
    }
  }
  return result;
}

bool check_bound(const DriverSelection& selection, std::size_t minimum_size) {
  if (selection.steps.empty()) return true;
  const double first = selection.first_value();
  if (first < 1.0) return false;
  const double bound = (1.0 + std::log(first)) * static_cast<double>(minimum_size);
  return static_cast<double>(selection.size()) <= bound;
}

std::vector<DriverSelection> multi_solutions(const TemporalNetwork& net, std::size_t count,
                                             SeedStrategy strategy, std::uint64_t seed) {
  std::vector<DriverSelection> out;
  if (count == 0) return out;
  std::set<DriverSet> seen;
  auto keep = [&](DriverSelection sel) {
    if (seen.insert(sel.driver_set()).second) out.push_back(std::move(sel));
  };
  keep(otaha(net));

  std::vector<NodeId> order(net.node_count());
  std::iota(order.begin(), order.end(), 0);
  if (strategy == SeedStrategy::random) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    std::vector<std::size_t> degree(net.node_count(), 0);
    for (const auto& snap : net.snapshots())
      for (const Edge& e : snap) {
        ++degree[static_cast<std::size_t>(e.source)];
        ++degree[static_cast<std::size_t>(e.target)];
      }
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
      return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
    });
  }
  for (NodeId v : order) {
    if (out.size() >= count) break;
    const NodeId start[] = {v};
    keep(otaha(net, start));
  }
  return out;
}

}  // namespace tempoctrl
