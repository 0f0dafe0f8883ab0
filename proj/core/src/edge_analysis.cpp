#include "tempoctrl/edge_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "tempoctrl/detect.hpp"

namespace tempoctrl {

std::string_view to_string(EdgeRole role) {
  switch (role) {
    case EdgeRole::critical: return "critical";
    case EdgeRole::ordinary: return "ordinary";
    case EdgeRole::redundant: return "redundant";
  }
  return "unknown";
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::exact ? "exact" : "approximate";
}

std::string_view to_string(AttackStrategy strategy) {
  switch (strategy) {
    case AttackStrategy::random: return "random";
    case AttackStrategy::ascending: return "ascending";
    case AttackStrategy::descending: return "descending";
  }
  return "unknown";
}

AttackStrategy parse_attack_strategy(std::string_view text) {
  if (text == "random") return AttackStrategy::random;
  if (text == "asc" || text == "ascending") return AttackStrategy::ascending;
  if (text == "desc" || text == "descending") return AttackStrategy::descending;
  throw std::invalid_argument("unknown attack strategy '" + std::string(text) + "'");
}

std::size_t EdgeClassification::count(EdgeRole role) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [role](const auto& v) { return v.role == role; }));
}

EdgeClassification classify_edges(const TemporalNetwork& net, std::size_t exact_threshold) {
  const bool exact = net.node_count() <= exact_threshold;
  EdgeClassification out;
  out.provenance = exact ? Provenance::exact : Provenance::approximate;

  BruteForceOptions first_minimum;
  first_minimum.allow_large = true;
  first_minimum.first_only = true;
  if (exact) {
    const auto bf = brute_force(net, first_minimum);
    if (!bf.minimum_size) throw std::runtime_error("uncontrollable instance");
    out.reference_driver_count = *bf.minimum_size;
    out.reference_drivers = bf.optimal_sets.front();
  } else {
    const auto sel = otaha(net);
    out.reference_driver_count = sel.size();
    out.reference_drivers = sel.driver_set();
  }

  const int n = static_cast<int>(net.node_count());
  const std::size_t nd = out.reference_driver_count;
  for (const TemporalEdge& e : net.temporal_edges()) {
    EdgeVerdict verdict{e, EdgeRole::redundant, std::nullopt};
    const TemporalEdge removed[] = {e};
    const TemporalNetwork perturbed = net.without_edges(removed);
    if (controllable_dimension(perturbed, out.reference_drivers) < n) {
      std::size_t count = 0;
      if (exact) {
        // Removing one edge can cost at most one extra driver.
        BruteForceOptions probe = first_minimum;
        probe.max_size = nd + 1;
        const auto bf = brute_force(perturbed, probe);
        count = bf.minimum_size.value_or(nd + 1);
      } else {
        count = otaha(perturbed).size();
      }
      verdict.perturbed_driver_count = count;
      verdict.role = count > nd ? EdgeRole::critical : EdgeRole::ordinary;
    }
    out.edges.push_back(verdict);
  }
  return out;
}

nlohmann::json to_json(const EdgeClassification& result, const TemporalNetwork& net) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& v : result.edges) {
    nlohmann::json row = {{"time", v.edge.time},
                          {"source", v.edge.source},
                          {"target", v.edge.target},
                          {"role", to_string(v.role)}};
    if (v.perturbed_driver_count) row["perturbed_drivers"] = *v.perturbed_driver_count;
    edges.push_back(std::move(row));
  }
  std::vector<std::string> labels;
  for (NodeId d : result.reference_drivers) labels.push_back(net.label(d));
  const std::vector<NodeId> drivers(result.reference_drivers.begin(), result.reference_drivers.end());
  return {{"provenance", to_string(result.provenance)},
          {"reference_driver_count", result.reference_driver_count},
          {"reference_drivers", drivers},
          {"reference_labels", labels},
          {"counts",
           {{"critical", result.count(EdgeRole::critical)},
            {"ordinary", result.count(EdgeRole::ordinary)},
            {"redundant", result.count(EdgeRole::redundant)}}},
          {"edges", std::move(edges)}};
}

std::vector<double> edge_betweenness(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::vector<std::size_t>> out_edges(node_count);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto u = static_cast<std::size_t>(edges[e].source);
    const auto v = static_cast<std::size_t>(edges[e].target);
    if (u >= node_count || v >= node_count) throw std::out_of_range("edge endpoint out of range");
    out_edges[u].push_back(e);
  }

  std::vector<double> score(edges.size(), 0.0);
  std::vector<long long> dist(node_count);
  std::vector<double> sigma(node_count), delta(node_count);
  std::vector<std::vector<std::size_t>> pred(node_count);
  std::vector<std::size_t> order;
  order.reserve(node_count);

  for (std::size_t s = 0; s < node_count; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::size_t u = order[head];
      for (std::size_t e : out_edges[u]) {
        const auto w = static_cast<std::size_t>(edges[e].target);
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) {
          sigma[w] += sigma[u];
          pred[w].push_back(e);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t e : pred[w]) {
        const auto v = static_cast<std::size_t>(edges[e].source);
        const double c = sigma[v] / sigma[w] * (1.0 + delta[w]);
        score[e] += c;
        delta[v] += c;
      }
    }
  }
  return score;
}

std::vector<double> temporal_edge_betweenness(const TemporalNetwork& net) {
  const std::size_t n = net.node_count();
  std::vector<Edge> layered;
  layered.reserve(net.edge_count());
  for (const TemporalEdge& te : net.temporal_edges()) {
    const auto k = static_cast<std::size_t>(te.time);
    layered.push_back({static_cast<NodeId>(k * n + static_cast<std::size_t>(te.source)),
                       static_cast<NodeId>((k + 1) * n + static_cast<std::size_t>(te.target))});
  }
  return edge_betweenness(n * (net.steps() + 1), layered);
}

namespace {

std::vector<double> sample_fractions(double step) {
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double f = static_cast<double>(k) * step;
    if (f >= 1.0 - 1e-12) break;
    out.push_back(f);
  }
  out.push_back(1.0);
  return out;
}

// Indices into `edges` sorted by score; ties keep (time, source, target) order.
std::vector<std::size_t> betweenness_order(std::span<const double> scores, bool descending) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  return order;
}

// f(D) for every driver set after removing the first `removed[p]` edges of
// `order`, for every sample point p. Result is indexed [set][point].
std::vector<std::vector<int>> replay(const TemporalNetwork& net,
                                     std::span<const TemporalEdge> edges,
                                     std::span<const std::size_t> order,
                                     std::span<const std::size_t> removed,
                                     std::span<const DriverSet> driver_sets) {
  std::vector<std::vector<int>> dims(driver_sets.size(), std::vector<int>(removed.size()));
  std::vector<TemporalEdge> gone;
  for (std::size_t p = 0; p < removed.size(); ++p) {
    while (gone.size() < removed[p]) gone.push_back(edges[order[gone.size()]]);
    const LayeredFlowGraph layered(net.without_edges(gone));
    for (std::size_t d = 0; d < driver_sets.size(); ++d)
      dims[d][p] = controllable_dimension(layered, driver_sets[d]);
  }
  return dims;
}

// Adaptive variant: after each sample point the surviving edges are ranked on
// the pruned network.
std::vector<std::vector<int>> replay_adaptive(const TemporalNetwork& net,
                                              std::span<const std::size_t> removed,
                                              std::span<const DriverSet> driver_sets,
                                              bool descending) {
  std::vector<std::vector<int>> dims(driver_sets.size(), std::vector<int>(removed.size()));
  std::vector<TemporalEdge> gone;
  TemporalNetwork current = net;
  for (std::size_t p = 0; p < removed.size(); ++p) {
    if (gone.size() < removed[p]) {
      const auto remaining = current.temporal_edges();
      const auto scores = temporal_edge_betweenness(current);
      const auto order = betweenness_order(scores, descending);
      for (std::size_t i = 0; gone.size() < removed[p] && i < order.size(); ++i)
        gone.push_back(remaining[order[i]]);
      current = net.without_edges(gone);
    }
    const LayeredFlowGraph layered(current);
    for (std::size_t d = 0; d < driver_sets.size(); ++d)
      dims[d][p] = controllable_dimension(layered, driver_sets[d]);
  }
  return dims;
}

}  // namespace

std::vector<AttackTrace> attack_simulation(const TemporalNetwork& net,
                                           std::span<const DriverSet> driver_sets,
                                           const AttackOptions& options) {
  if (!(options.step_fraction > 0.0 && options.step_fraction <= 1.0))
    throw std::invalid_argument("step fraction must lie in (0, 1]");
  if (options.strategy == AttackStrategy::random && options.trials == 0)
    throw std::invalid_argument("random attack needs at least one trial");
  {
    const LayeredFlowGraph intact(net);
    for (std::size_t d = 0; d < driver_sets.size(); ++d) {
      if (controllable_dimension(intact, driver_sets[d]) != static_cast<int>(net.node_count()))
        throw std::invalid_argument("driver set " + std::to_string(d) +
                                    " does not control the intact network");
    }
  }

  const auto edges = net.temporal_edges();
  const auto fractions = sample_fractions(options.step_fraction);
  std::vector<std::size_t> removed;
  for (double f : fractions)
    removed.push_back(static_cast<std::size_t>(std::llround(f * static_cast<double>(edges.size()))));

  // samples[trial][set][point]
  std::vector<std::vector<std::vector<int>>> samples;
  if (options.strategy == AttackStrategy::random) {
    samples.resize(options.trials);
    auto run_trial = [&](std::size_t trial) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(trial)};
      std::mt19937_64 rng(seq);
      std::vector<std::size_t> order(edges.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      samples[trial] = replay(net, edges, order, removed, driver_sets);
    };
    std::size_t workers = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    workers = std::clamp<std::size_t>(workers, 1, options.trials);
    if (workers == 1) {
      for (std::size_t t = 0; t < options.trials; ++t) run_trial(t);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (std::size_t t = w; t < options.trials; t += workers) run_trial(t);
        });
    }
  } else {
    const bool descending = options.strategy == AttackStrategy::descending;
    if (options.recompute_betweenness) {
      samples.push_back(replay_adaptive(net, removed, driver_sets, descending));
    } else {
      const auto order = betweenness_order(temporal_edge_betweenness(net), descending);
      samples.push_back(replay(net, edges, order, removed, driver_sets));
    }
  }

  std::vector<AttackTrace> traces;
  for (std::size_t d = 0; d < driver_sets.size(); ++d) {
    AttackTrace trace;
    trace.strategy = options.strategy;
    trace.driver_set_id = d;
    trace.trials = samples.size();
    for (std::size_t p = 0; p < fractions.size(); ++p) {
      double sum = 0.0, sq = 0.0;
      for (const auto& trial : samples) {
        const double x = trial[d][p];
        sum += x;
        sq += x * x;
      }
      const double count = static_cast<double>(samples.size());
      const double mean = sum / count;
      const double var = std::max(0.0, sq / count - mean * mean);
      trace.points.push_back({fractions[p], removed[p], mean, std::sqrt(var)});
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

double trace_area(const AttackTrace& trace) {
  double area = 0.0;
  for (std::size_t i = 1; i < trace.points.size(); ++i) {
    const auto& a = trace.points[i - 1];
    const auto& b = trace.points[i];
    area += 0.5 * (a.mean_dimension + b.mean_dimension) * (b.fraction - a.fraction);
  }
  return area;
}

void write_attack_csv(std::ostream& out, std::span<const AttackTrace> traces) {
  out << "strategy,driver_set_id,fraction,dimension,trial_mean,trial_std\n";
  char buf[160];
  for (const auto& trace : traces) {
    for (const auto& p : trace.points) {
      std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f,%.6f,%.6f\n",
                    std::string(to_string(trace.strategy)).c_str(), trace.driver_set_id, p.fraction,
                    p.mean_dimension, p.mean_dimension, p.std_dimension);
      out << buf;
    }
  }
}

}  // namespace tempoctrl
