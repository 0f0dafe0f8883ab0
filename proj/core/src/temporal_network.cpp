#include "tempoctrl/temporal_network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace tempoctrl {

namespace {

std::string default_label(std::size_t i) { return std::to_string(i); }

bool parse_integer(const std::string& s, std::int64_t& value) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool parse_double(const std::string& s, double& value) {
  // from_chars for double is not available on every toolchain we target.
  std::istringstream is(s);
  is.imbue(std::locale::classic());
  is >> value;
  return !is.fail() && is.eof() && std::isfinite(value);
}

struct RawLine {
  std::string source;
  std::string target;
  double timestamp;
};

}  // namespace

TemporalNetwork::TemporalNetwork(std::size_t node_count,
                                 std::vector<std::vector<Edge>> snapshots, bool self_loops,
                                 std::int64_t t0, std::vector<std::string> labels)
    : node_count_(node_count),
      t0_(t0),
      self_loops_(self_loops),
      snapshots_(std::move(snapshots)),
      labels_(std::move(labels)) {
  if (node_count_ == 0) throw std::invalid_argument("temporal network needs at least one node");
  if (node_count_ > static_cast<std::size_t>(std::numeric_limits<NodeId>::max()))
    throw std::invalid_argument("node count exceeds NodeId range");
  if (snapshots_.empty()) throw std::invalid_argument("temporal network needs t1 > t0");
  if (labels_.empty()) {
    labels_.reserve(node_count_);
    for (std::size_t i = 0; i < node_count_; ++i) labels_.push_back(default_label(i));
  } else if (labels_.size() != node_count_) {
    throw std::invalid_argument("label table size " + std::to_string(labels_.size()) +
                                " does not match node count " + std::to_string(node_count_));
  }

  const auto n = static_cast<NodeId>(node_count_);
  for (std::size_t k = 0; k < snapshots_.size(); ++k) {
    auto& snap = snapshots_[k];
    for (const Edge& e : snap) {
      if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n) {
        throw std::invalid_argument("edge (" + std::to_string(e.source) + ", " +
                                    std::to_string(e.target) + ") in snapshot " +
                                    std::to_string(k) + " is outside [0, " +
                                    std::to_string(n) + ")");
      }
    }
    std::sort(snap.begin(), snap.end());
    snap.erase(std::unique(snap.begin(), snap.end()), snap.end());
    edge_count_ += snap.size();
  }
}

std::size_t TemporalNetwork::non_empty_snapshot_count() const {
  return static_cast<std::size_t>(
      std::count_if(snapshots_.begin(), snapshots_.end(), [](const auto& s) { return !s.empty(); }));
}

std::vector<TemporalEdge> TemporalNetwork::temporal_edges() const {
  std::vector<TemporalEdge> out;
  out.reserve(edge_count_);
  for (std::size_t k = 0; k < snapshots_.size(); ++k)
    for (const Edge& e : snapshots_[k])
      out.push_back({static_cast<std::int32_t>(k), e.source, e.target});
  return out;
}

TemporalNetwork TemporalNetwork::without_edges(std::span<const TemporalEdge> removed) const {
  auto snapshots = snapshots_;
  std::vector<TemporalEdge> sorted(removed.begin(), removed.end());
  std::sort(sorted.begin(), sorted.end());
  for (const TemporalEdge& te : sorted) {
    if (te.time < 0 || static_cast<std::size_t>(te.time) >= snapshots.size()) continue;
    auto& snap = snapshots[static_cast<std::size_t>(te.time)];
    const Edge key{te.source, te.target};
    auto it = std::lower_bound(snap.begin(), snap.end(), key);
    if (it != snap.end() && *it == key) snap.erase(it);
  }
  return TemporalNetwork(node_count_, std::move(snapshots), self_loops_, t0_, labels_);
}

TemporalNetwork TemporalNetwork::with_self_loops(bool self_loops) const {
  TemporalNetwork copy = *this;
  copy.self_loops_ = self_loops;
  return copy;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

TemporalNetwork parse_temporal_edgelist(std::istream& in, const ParseOptions& options) {
  if (!(options.resolution > 0.0) || !std::isfinite(options.resolution))
    throw std::invalid_argument("time resolution must be positive");

  std::vector<RawLine> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string src, dst, ts;
    if (!(fields >> src)) continue;
    if (!(fields >> dst >> ts))
      throw ParseError(line_no, "expected 'source target timestamp'");
    double timestamp = 0.0;
    if (!parse_double(ts, timestamp))
      throw ParseError(line_no, "timestamp '" + ts + "' is not numeric");
    rows.push_back({std::move(src), std::move(dst), timestamp});
  }
  if (rows.empty()) throw ParseError(0, "no edges");

  std::vector<std::string> names;
  for (const auto& r : rows) {
    names.push_back(r.source);
    names.push_back(r.target);
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::vector<std::int64_t> numeric(names.size());
  bool all_numeric = true;
  for (std::size_t i = 0; i < names.size() && all_numeric; ++i)
    all_numeric = parse_integer(names[i], numeric[i]);
  if (all_numeric) {
    std::vector<std::size_t> order(names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return numeric[a] < numeric[b]; });
    std::vector<std::string> reordered;
    reordered.reserve(names.size());
    for (std::size_t i : order) reordered.push_back(names[i]);
    names = std::move(reordered);
  }
  std::map<std::string, NodeId> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<NodeId>(i));

  double min_ts = rows.front().timestamp;
  for (const auto& r : rows) min_ts = std::min(min_ts, r.timestamp);

  std::vector<std::vector<Edge>> snapshots;
  for (const auto& r : rows) {
    const double bin = std::floor((r.timestamp - min_ts) / options.resolution);
    if (bin > static_cast<double>(std::numeric_limits<std::int32_t>::max() - 1))
      throw std::invalid_argument("time span too long for the chosen resolution");
    const auto k = static_cast<std::size_t>(bin);
    if (k >= snapshots.size()) snapshots.resize(k + 1);
    const NodeId u = index.at(r.source);
    const NodeId v = index.at(r.target);
    snapshots[k].push_back({u, v});
    if (!options.directed && u != v) snapshots[k].push_back({v, u});
  }
  const std::size_t n = names.size();
  return TemporalNetwork(n, std::move(snapshots), options.self_loops, 0, std::move(names));
}

void write_temporal_edgelist(std::ostream& out, const TemporalNetwork& net) {
  out << "# source target snapshot\n";
  for (std::size_t k = 0; k < net.steps(); ++k)
    for (const Edge& e : net.snapshot(k))
      out << net.label(e.source) << ' ' << net.label(e.target) << ' ' << k << '\n';
}

ParseOptions parse_options_from_json(const nlohmann::json& descriptor, ParseOptions defaults) {
  if (!descriptor.is_object()) throw std::invalid_argument("descriptor must be a JSON object");
  if (auto it = descriptor.find("resolution"); it != descriptor.end())
    defaults.resolution = it->get<double>();
  if (auto it = descriptor.find("directed"); it != descriptor.end())
    defaults.directed = it->get<bool>();
  if (auto it = descriptor.find("self_loops"); it != descriptor.end())
    defaults.self_loops = it->get<bool>();
  return defaults;
}

nlohmann::json to_json(const TemporalNetwork& net) {
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& snap : net.snapshots()) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : snap) edges.push_back({e.source, e.target});
    snaps.push_back(std::move(edges));
  }
  return {{"n", net.node_count()},       {"t0", net.t0()},           {"t1", net.t1()},
          {"self_loops", net.self_loops()}, {"snapshots", std::move(snaps)},
          {"labels", net.labels()}};
}

TemporalNetwork network_from_json(const nlohmann::json& doc) {
  const auto n = doc.at("n").get<std::size_t>();
  const auto t0 = doc.at("t0").get<std::int64_t>();
  const auto t1 = doc.at("t1").get<std::int64_t>();
  const auto& snaps = doc.at("snapshots");
  if (t1 - t0 != static_cast<std::int64_t>(snaps.size()))
    throw std::invalid_argument("snapshot count does not match t1 - t0");
  std::vector<std::vector<Edge>> snapshots;
  snapshots.reserve(snaps.size());
  for (const auto& snap : snaps) {
    auto& edges = snapshots.emplace_back();
    for (const auto& pair : snap) edges.push_back({pair.at(0).get<NodeId>(), pair.at(1).get<NodeId>()});
  }
  std::vector<std::string> labels;
  if (auto it = doc.find("labels"); it != doc.end()) labels = it->get<std::vector<std::string>>();
  return TemporalNetwork(n, std::move(snapshots), doc.at("self_loops").get<bool>(), t0,
                         std::move(labels));
}

}  // namespace tempoctrl
