#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempoctrl/controllability.hpp"
#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl {

// --- Edge roles -------------------------------------------------------------

enum class EdgeRole { critical, ordinary, redundant };
enum class Provenance { exact, approximate };

std::string_view to_string(EdgeRole role);
std::string_view to_string(Provenance provenance);

struct EdgeVerdict {
  TemporalEdge edge;
  EdgeRole role = EdgeRole::redundant;
  /// Minimum (or OTaHa) driver count of the perturbed network; unset for
  /// redundant edges, where no search is needed.
  std::optional<std::size_t> perturbed_driver_count;
};

struct EdgeClassification {
  Provenance provenance = Provenance::exact;
  std::size_t reference_driver_count = 0;
  DriverSet reference_drivers;
  std::vector<EdgeVerdict> edges;  // ordered like TemporalNetwork::temporal_edges()

  std::size_t count(EdgeRole role) const;
};

/// Probes every temporal edge by removing it alone.
///
/// The reference driver set comes from brute force when the network has at most
/// `exact_threshold` nodes (provenance exact) and from OTaHa otherwise
/// (provenance approximate). An edge is redundant when the reference set still
/// controls the network without it, critical when the minimum driver count of
/// the perturbed network grows, and ordinary otherwise. Self-retention edges
/// are not temporal edges and are never probed. `net` is not modified.
EdgeClassification classify_edges(const TemporalNetwork& net, std::size_t exact_threshold);

nlohmann::json to_json(const EdgeClassification& result, const TemporalNetwork& net);

// --- Betweenness ------------------------------------------------------------

/// Directed edge betweenness with unit lengths: for every ordered pair (s, t)
/// each shortest s-t path contributes 1 / sigma(s, t) to every edge on it.
/// Parallel edges split the credit. Returned scores follow the order of `edges`.
std::vector<double> edge_betweenness(std::size_t node_count, std::span<const Edge> edges);

/// Betweenness of the temporal edges on the unsplit time-layered graph, where
/// temporal edge (i, j, k) is the arc (i, k) -> (j, k + 1). Retention edges are
/// left out of the graph. Scores follow TemporalNetwork::temporal_edges().
std::vector<double> temporal_edge_betweenness(const TemporalNetwork& net);

// --- Attacks ----------------------------------------------------------------

enum class AttackStrategy { random, ascending, descending };

std::string_view to_string(AttackStrategy strategy);
/// Accepts random, asc/ascending, desc/descending.
AttackStrategy parse_attack_strategy(std::string_view text);

struct AttackPoint {
  double fraction = 0.0;      // removed share of temporal edges
  std::size_t removed = 0;    // removed edge count
  double mean_dimension = 0;  // mean f(D) over trials
  double std_dimension = 0;   // population standard deviation over trials
};

struct AttackTrace {
  AttackStrategy strategy = AttackStrategy::random;
  std::size_t driver_set_id = 0;
  std::size_t trials = 1;
  std::vector<AttackPoint> points;
};

struct AttackOptions {
  AttackStrategy strategy = AttackStrategy::descending;
  /// Spacing of the sampled fractions, in (0, 1].
  double step_fraction = 0.05;
  /// Independent permutations for the random strategy.
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Rank the remaining edges again after every step.
  bool recompute_betweenness = false;
  /// Worker threads for random trials; 0 picks hardware concurrency.
  std::size_t threads = 1;
};

/// Removes temporal edges cumulatively in strategy order and records f(D) for
/// every driver set at fractions 0, step, 2 step, ..., 1. The betweenness order
/// is taken once from the intact network (ties by (time, source, target))
/// unless recompute_betweenness is set. Retention edges are never removed.
///
/// Throws std::invalid_argument for a step outside (0, 1] or a driver set that
/// does not control the intact network.
std::vector<AttackTrace> attack_simulation(const TemporalNetwork& net,
                                           std::span<const DriverSet> driver_sets,
                                           const AttackOptions& options);

/// Trapezoidal area under mean dimension versus fraction.
double trace_area(const AttackTrace& trace);

/// Header `strategy,driver_set_id,fraction,dimension,trial_mean,trial_std`;
/// numbers use six decimals. `dimension` repeats the trial mean.
void write_attack_csv(std::ostream& out, std::span<const AttackTrace> traces);

}  // namespace tempoctrl
