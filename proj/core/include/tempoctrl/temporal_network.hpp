#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tempoctrl {

using NodeId = std::int32_t;

/// Directed edge inside one snapshot.
struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge (source, target) active during snapshot `time`. `time` is the
/// zero-based snapshot index, so it connects layer `time` to layer `time + 1`.
struct TemporalEdge {
  std::int32_t time = 0;
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const TemporalEdge&, const TemporalEdge&) = default;
};

/// A fixed node set observed through `steps()` chronologically ordered
/// snapshots. Snapshot k holds the interactions that carry state from time
/// t0 + k to t0 + k + 1.
///
/// Snapshots are stored sorted and duplicate-free. Blank snapshots are kept so
/// that the time span is preserved. The object is immutable once built.
class TemporalNetwork {
 public:
  TemporalNetwork() = default;

  /// Throws std::invalid_argument on out-of-range endpoints, an empty node set,
  /// no snapshots, or a label table of the wrong size. Duplicate edges within a
  /// snapshot are collapsed.
  TemporalNetwork(std::size_t node_count, std::vector<std::vector<Edge>> snapshots,
                  bool self_loops, std::int64_t t0 = 0,
                  std::vector<std::string> labels = {});

  std::size_t node_count() const { return node_count_; }
  std::int64_t t0() const { return t0_; }
  std::int64_t t1() const { return t0_ + static_cast<std::int64_t>(snapshots_.size()); }
  /// Number of transition steps (t1 - t0).
  std::size_t steps() const { return snapshots_.size(); }
  bool self_loops() const { return self_loops_; }

  std::span<const Edge> snapshot(std::size_t k) const { return snapshots_.at(k); }
  const std::vector<std::vector<Edge>>& snapshots() const { return snapshots_; }

  /// Total edge count M summed over snapshots.
  std::size_t edge_count() const { return edge_count_; }
  std::size_t non_empty_snapshot_count() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(NodeId v) const { return labels_.at(static_cast<std::size_t>(v)); }

  /// All temporal edges ordered by (time, source, target).
  std::vector<TemporalEdge> temporal_edges() const;

  /// Copy of this network with the listed temporal edges removed. Edges that
  /// are not present are ignored.
  TemporalNetwork without_edges(std::span<const TemporalEdge> removed) const;

  /// Same topology with the retention flag replaced.
  TemporalNetwork with_self_loops(bool self_loops) const;

  friend bool operator==(const TemporalNetwork&, const TemporalNetwork&) = default;

 private:
  std::size_t node_count_ = 0;
  std::int64_t t0_ = 0;
  bool self_loops_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Edge>> snapshots_;
  std::vector<std::string> labels_;
};

struct ParseOptions {
  /// Width of one snapshot in timestamp units.
  double resolution = 1.0;
  /// When false every line also yields the reverse orientation.
  bool directed = true;
  bool self_loops = true;
};

/// Thrown for malformed edge-list input; carries the 1-based line number
/// (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads `source target timestamp` lines. Blank lines and `#` comments are
/// skipped; extra columns after the timestamp are ignored. Timestamps are binned
/// to floor((ts - min_ts) / resolution). Labels are mapped to dense ids in
/// natural order (numeric when every label is an integer, else lexicographic).
TemporalNetwork parse_temporal_edgelist(std::istream& in, const ParseOptions& options);

/// Writes one `label label snapshot` line per temporal edge. Re-parsing the
/// output at resolution 1 reproduces any network whose first and last snapshot
/// are non-empty and whose nodes all carry an edge.
void write_temporal_edgelist(std::ostream& out, const TemporalNetwork& net);

/// Reads the optional {resolution, directed, self_loops} descriptor. Missing
/// keys keep the values already in `defaults`.
ParseOptions parse_options_from_json(const nlohmann::json& descriptor,
                                     ParseOptions defaults = {});

nlohmann::json to_json(const TemporalNetwork& net);
TemporalNetwork network_from_json(const nlohmann::json& doc);

}  // namespace tempoctrl
