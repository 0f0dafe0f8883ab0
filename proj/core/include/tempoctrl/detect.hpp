#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempoctrl/controllability.hpp"
#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl {

/// Source of marginal gains for the greedy selectors.
///
/// The oracle owns the current driver set D. evaluate(v) returns
/// f(D + {v}) - f(D) and counts as one set-function evaluation. commit(v) adds
/// v to D; it reuses the work of an evaluate(v) made since the last commit and
/// only costs an evaluation when there is none.
class GainOracle {
 public:
  virtual ~GainOracle() = default;

  virtual std::size_t universe_size() const = 0;
  /// Value of f that ends the search (N for a temporal network).
  virtual int target() const = 0;
  virtual int value() const = 0;
  virtual int evaluate(NodeId v) = 0;
  /// Returns the marginal gain of `v` at commit time.
  virtual int commit(NodeId v) = 0;
  virtual std::size_t evaluations() const = 0;
};

/// Gains from max-flow increments on a persistent residual graph. Each
/// evaluation copies the current residual, attaches the candidate and augments.
class OnlineFlowOracle final : public GainOracle {
 public:
  explicit OnlineFlowOracle(const TemporalNetwork& net);
  explicit OnlineFlowOracle(std::shared_ptr<const LayeredFlowGraph> layered);

  std::size_t universe_size() const override { return session_.layered().node_count(); }
  int target() const override { return static_cast<int>(universe_size()); }
  int value() const override { return session_.value(); }
  int evaluate(NodeId v) override;
  int commit(NodeId v) override;
  std::size_t evaluations() const override { return evaluations_; }

 private:
  ControllabilitySession session_;
  std::map<NodeId, std::pair<int, ResidualState>> pending_;
  std::size_t evaluations_ = 0;
};

/// Gains from two independent max-flow computations, f(D + {v}) from an empty
/// residual minus the known f(D). This is the classic greedy cost model.
class ScratchFlowOracle final : public GainOracle {
 public:
  explicit ScratchFlowOracle(const TemporalNetwork& net);

  std::size_t universe_size() const override { return layered_.node_count(); }
  int target() const override { return static_cast<int>(universe_size()); }
  int value() const override { return value_; }
  int evaluate(NodeId v) override;
  int commit(NodeId v) override;
  std::size_t evaluations() const override { return evaluations_; }

 private:
  LayeredFlowGraph layered_;
  DriverSet drivers_;
  int value_ = 0;
  std::map<NodeId, int> pending_;
  std::size_t evaluations_ = 0;
};

struct SelectionStep {
  NodeId node = 0;
  int gain = 0;   // marginal gain when selected
  int value = 0;  // f(D_k) after the step
  bool seeded = false;
  /// Selected through the re-pick branch: the node was already evaluated in
  /// this iteration and its gain was not recomputed.
  bool repicked = false;
};

struct DriverSelection {
  std::string algorithm;
  int target = 0;
  std::vector<SelectionStep> steps;
  std::size_t evaluations = 0;
  double elapsed_ms = 0.0;

  std::size_t size() const { return steps.size(); }
  std::vector<NodeId> drivers() const;
  DriverSet driver_set() const;
  std::vector<int> gains() const;
  std::vector<int> f_trace() const;
  int final_value() const { return steps.empty() ? 0 : steps.back().value; }
  /// f(D_1), the value after the first selected node.
  int first_value() const { return steps.empty() ? 0 : steps.front().value; }
  bool complete() const { return final_value() == target; }
};

/// {algorithm, drivers, labels, gains, f_trace, repicked, evaluations, elapsed_ms}.
nlohmann::json to_json(const DriverSelection& selection, const TemporalNetwork* net = nullptr);

struct LazyGreedyOptions {
  /// Re-evaluate a node even when it is re-picked within one iteration.
  bool strict = false;
};

/// Lazy greedy selection. Every candidate is evaluated once, then each
/// iteration only refreshes the current leader until its fresh gain still ranks
/// first. Ranks compare (gain, lower node id). Seed nodes are committed before
/// the search starts. Throws std::runtime_error("uncontrollable instance") when
/// no candidate has a positive gain before the target is reached.
DriverSelection lazy_greedy(GainOracle& oracle, std::span<const NodeId> seed = {},
                            LazyGreedyOptions options = {});

/// Greedy that re-evaluates every unselected node in every iteration.
DriverSelection plain_greedy(GainOracle& oracle, std::span<const NodeId> seed = {});

/// Lazy greedy over online max-flow increments.
DriverSelection otaha(const TemporalNetwork& net, std::span<const NodeId> seed = {},
                      LazyGreedyOptions options = {});

/// Plain greedy over from-scratch max-flow evaluations.
DriverSelection greedy_baseline(const TemporalNetwork& net);

struct BruteForceOptions {
  /// Give up after this cardinality.
  std::optional<std::size_t> max_size;
  /// Refuse networks larger than this unless `allow_large` is set.
  std::size_t node_limit = 24;
  bool allow_large = false;
  /// Stop at the first minimum set instead of listing all of them.
  bool first_only = false;
};

struct BruteForceResult {
  /// Unset when no set within max_size controls the network.
  std::optional<std::size_t> minimum_size;
  /// Every minimum set in lexicographic order (only the first with first_only).
  std::vector<DriverSet> optimal_sets;
  std::size_t evaluations = 0;
};

/// Exhaustive search by increasing cardinality. Throws std::length_error when
/// the node count exceeds the guard.
BruteForceResult brute_force(const TemporalNetwork& net, const BruteForceOptions& options = {});

/// ell <= (1 + ln f(D_1)) * minimum_size, with ell the number of drivers.
bool check_bound(const DriverSelection& selection, std::size_t minimum_size);

enum class SeedStrategy { random, degree };

/// Up to `count` distinct driver sets: the unseeded run first, then runs seeded
/// with one node taken in random order or by descending total degree.
std::vector<DriverSelection> multi_solutions(const TemporalNetwork& net, std::size_t count,
                                             SeedStrategy strategy, std::uint64_t seed);

}  // namespace tempoctrl
