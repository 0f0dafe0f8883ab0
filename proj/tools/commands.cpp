#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tempoctrl/detect.hpp"
#include "tempoctrl/edge_analysis.hpp"
#include "tempoctrl/generate.hpp"
#include "tempoctrl/rank_oracle.hpp"

namespace tempoctrl::cli {

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string dump(nlohmann::json doc) { return doc.dump(2) + "\n"; }

// Human-readable line next to machine output; kept off stdout when stdout
// carries the JSON document.
void summary(const RunConfig& config, const std::string& line) {
  if (config.out_dir.empty())
    std::cerr << line << '\n';
  else
    std::cout << line << '\n';
}

std::string file_name(const RunConfig& config) {
  return config.subcommand + (config.format == OutputFormat::csv ? ".csv" : ".json");
}

void require_format(const RunConfig& config, std::initializer_list<OutputFormat> allowed) {
  for (auto f : allowed)
    if (f == config.format) return;
  throw std::invalid_argument("--format " + to_string(config.format) + " is not supported by " +
                              config.subcommand);
}

nlohmann::json network_summary(const TemporalNetwork& net) {
  return {{"n", net.node_count()},
          {"t0", net.t0()},
          {"t1", net.t1()},
          {"edges", net.edge_count()},
          {"self_loops", net.self_loops()}};
}

std::vector<std::string> labels_of(const TemporalNetwork& net, const DriverSet& d) {
  std::vector<std::string> out;
  for (NodeId v : d) out.push_back(net.label(v));
  return out;
}

SeedStrategy parse_seed_strategy(const std::string& text) {
  if (text == "random") return SeedStrategy::random;
  if (text == "degree") return SeedStrategy::degree;
  throw std::invalid_argument("unknown seed strategy '" + text + "'");
}

nlohmann::json brute_force_json(const TemporalNetwork& net, const BruteForceResult& r,
                                double elapsed_ms) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& d : r.optimal_sets) sets.push_back(labels_of(net, d));
  return {{"minimum_size", r.minimum_size ? nlohmann::json(*r.minimum_size) : nlohmann::json(nullptr)},
          {"optimal_set_count", r.optimal_sets.size()},
          {"optimal_sets", std::move(sets)},
          {"evaluations", r.evaluations},
          {"elapsed_ms", elapsed_ms}};
}

template <class F>
auto timed(F&& f, double& elapsed_ms) {
  const auto start = std::chrono::steady_clock::now();
  auto out = f();
  elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string selection_summary(const DriverSelection& sel) {
  std::ostringstream s;
  s << "algorithm=" << sel.algorithm << ", drivers=" << sel.size() << ", f=" << sel.final_value()
    << ", evaluations=" << sel.evaluations << ", elapsed_ms=" << fixed6(sel.elapsed_ms);
  return s.str();
}

GeneratorSpec make_spec(const std::string& model, std::size_t n, std::size_t t, double p, double k,
                        double alpha, std::uint64_t seed, bool self_loops) {
  GeneratorSpec spec;
  spec.model = parse_generator_model(model);
  spec.nodes = n;
  spec.snapshots = t;
  spec.probability = p;
  spec.mean_degree = k;
  spec.exponent = alpha;
  spec.seed = seed;
  spec.self_loops = self_loops;
  return spec;
}

}  // namespace

int cmd_detect(RunConfig config, const DetectArgs& args) {
  require_format(config, {OutputFormat::json, OutputFormat::csv});
  if (args.algorithm != "otaha" && args.algorithm != "greedy" && args.algorithm != "brute")
    throw std::invalid_argument("unknown algorithm '" + args.algorithm + "'");
  if (args.solutions == 0) throw std::invalid_argument("--solutions must be at least 1");
  config.parameters = {{"algorithm", args.algorithm},
                       {"brute_force", args.brute_force},
                       {"allow_large", args.allow_large},
                       {"strict", args.strict},
                       {"solutions", args.solutions},
                       {"seed_strategy", args.seed_strategy}};
  const auto net = load_network(config);

  nlohmann::json doc = {{"config", config.to_json()}, {"network", network_summary(net)}};
  std::optional<DriverSelection> selection;
  if (args.algorithm == "otaha")
    selection = otaha(net, {}, LazyGreedyOptions{args.strict});
  else if (args.algorithm == "greedy")
    selection = greedy_baseline(net);

  if (selection) doc["selection"] = to_json(*selection, &net);

  std::optional<BruteForceResult> exact;
  double exact_ms = 0.0;
  if (args.algorithm == "brute" || args.brute_force) {
    BruteForceOptions opts;
    opts.allow_large = args.allow_large;
    opts.max_size = config.max_size;
    exact = timed([&] { return brute_force(net, opts); }, exact_ms);
    doc["brute_force"] = brute_force_json(net, *exact, exact_ms);
  }

  if (args.solutions > 1) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : multi_solutions(net, args.solutions, parse_seed_strategy(args.seed_strategy),
                                           component_seed(config.seed, "solutions")))
      runs.push_back(to_json(run, &net));
    doc["solutions"] = std::move(runs);
  }

  if (config.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "step,node,label,gain,f,repicked\n";
    if (selection) {
      for (std::size_t i = 0; i < selection->steps.size(); ++i) {
        const auto& s = selection->steps[i];
        csv << i + 1 << ',' << s.node << ',' << net.label(s.node) << ',' << s.gain << ','
            << s.value << ',' << (s.repicked ? 1 : 0) << '\n';
      }
    } else if (exact && !exact->optimal_sets.empty()) {
      int step = 0;
      for (NodeId v : exact->optimal_sets.front())
        csv << ++step << ',' << v << ',' << net.label(v) << ",,,0\n";
    }
    emit(config, file_name(config), csv.str());
  } else {
    emit(config, file_name(config), dump(std::move(doc)));
  }

  if (selection) summary(config, selection_summary(*selection));
  if (exact) {
    std::ostringstream s;
    s << "algorithm=brute, drivers=";
    if (exact->minimum_size)
      s << *exact->minimum_size;
    else
      s << "none";
    s << ", f=" << (exact->optimal_sets.empty() ? 0 : controllable_dimension(net, exact->optimal_sets.front()))
      << ", evaluations=" << exact->evaluations << ", elapsed_ms=" << fixed6(exact_ms)
      << ", optimal_sets=" << exact->optimal_sets.size();
    summary(config, s.str());
    if (!exact->minimum_size) return 3;
  }
  return 0;
}

int cmd_attack(RunConfig config, const AttackArgs& args) {
  require_format(config, {OutputFormat::json, OutputFormat::csv});
  if (args.strategy.empty()) throw std::invalid_argument("attack requires --strategy");
  if (args.driver_sets == 0) throw std::invalid_argument("--driver-sets must be at least 1");
  AttackOptions opts;
  opts.strategy = parse_attack_strategy(args.strategy);
  opts.step_fraction = args.step;
  opts.trials = args.trials;
  opts.recompute_betweenness = args.recompute;
  opts.seed = component_seed(config.seed, "attack");
  opts.threads = thread_budget();
  config.parameters = {{"strategy", to_string(opts.strategy)},
                       {"algorithm", args.algorithm},
                       {"trials", args.trials},
                       {"step", args.step},
                       {"recompute", args.recompute},
                       {"driver_sets", args.driver_sets}};
  const auto net = load_network(config);

  std::vector<DriverSet> sets;
  if (args.algorithm == "brute") {
    BruteForceOptions bf;
    bf.max_size = config.max_size;
    for (auto& d : brute_force(net, bf).optimal_sets) {
      if (sets.size() == args.driver_sets) break;
      sets.push_back(std::move(d));
    }
    if (sets.empty()) throw std::runtime_error("no controlling driver set within --max-size");
  } else if (args.algorithm == "otaha") {
    for (const auto& run : multi_solutions(net, args.driver_sets, SeedStrategy::random,
                                           component_seed(config.seed, "solutions")))
      sets.push_back(run.driver_set());
  } else if (args.algorithm == "greedy") {
    sets.push_back(greedy_baseline(net).driver_set());
  } else {
    throw std::invalid_argument("unknown algorithm '" + args.algorithm + "'");
  }

  const auto traces = attack_simulation(net, sets, opts);
  if (config.format == OutputFormat::csv) {
    std::ostringstream csv;
    write_attack_csv(csv, traces);
    emit(config, file_name(config), csv.str());
  } else {
    nlohmann::json driver_sets = nlohmann::json::array();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::vector<NodeId> ids(sets[i].begin(), sets[i].end());
      driver_sets.push_back({{"id", i}, {"drivers", ids}, {"labels", labels_of(net, sets[i])}});
    }
    nlohmann::json out_traces = nlohmann::json::array();
    for (const auto& t : traces) {
      nlohmann::json points = nlohmann::json::array();
      for (const auto& p : t.points)
        points.push_back({{"fraction", p.fraction},
                          {"removed", p.removed},
                          {"mean_dimension", p.mean_dimension},
                          {"std_dimension", p.std_dimension}});
      out_traces.push_back({{"strategy", to_string(t.strategy)},
                            {"driver_set_id", t.driver_set_id},
                            {"trials", t.trials},
                            {"area", trace_area(t)},
                            {"points", std::move(points)}});
    }
    emit(config, file_name(config),
         dump({{"config", config.to_json()},
               {"network", network_summary(net)},
               {"driver_sets", std::move(driver_sets)},
               {"traces", std::move(out_traces)}}));
  }
  for (const auto& t : traces)
    summary(config, "strategy=" + std::string(to_string(t.strategy)) +
                        ", driver_set_id=" + std::to_string(t.driver_set_id) +
                        ", area=" + fixed6(trace_area(t)));
  return 0;
}

int cmd_classify(RunConfig config) {
  require_format(config, {OutputFormat::json, OutputFormat::csv});
  const auto net = load_network(config);
  const auto result = classify_edges(net, config.exact_threshold);
  if (config.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "time,source,target,role,perturbed_drivers\n";
    for (const auto& v : result.edges) {
      csv << v.edge.time << ',' << net.label(v.edge.source) << ',' << net.label(v.edge.target)
          << ',' << to_string(v.role) << ',';
      if (v.perturbed_driver_count) csv << *v.perturbed_driver_count;
      csv << '\n';
    }
    emit(config, file_name(config), csv.str());
  } else {
    auto doc = to_json(result, net);
    doc["config"] = config.to_json();
    doc["network"] = network_summary(net);
    emit(config, file_name(config), dump(std::move(doc)));
  }
  summary(config, "provenance=" + std::string(to_string(result.provenance)) +
                      ", drivers=" + std::to_string(result.reference_driver_count) +
                      ", critical=" + std::to_string(result.count(EdgeRole::critical)) +
                      ", ordinary=" + std::to_string(result.count(EdgeRole::ordinary)) +
                      ", redundant=" + std::to_string(result.count(EdgeRole::redundant)));
  return 0;
}

int cmd_betweenness(RunConfig config) {
  require_format(config, {OutputFormat::json, OutputFormat::csv});
  const auto net = load_network(config);
  const auto edges = net.temporal_edges();
  const auto scores = temporal_edge_betweenness(net);
  if (config.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "time,source,target,betweenness\n";
    for (std::size_t i = 0; i < edges.size(); ++i)
      csv << edges[i].time << ',' << net.label(edges[i].source) << ','
          << net.label(edges[i].target) << ',' << fixed6(scores[i]) << '\n';
    emit(config, file_name(config), csv.str());
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < edges.size(); ++i)
      rows.push_back({{"time", edges[i].time},
                      {"source", edges[i].source},
                      {"target", edges[i].target},
                      {"source_label", net.label(edges[i].source)},
                      {"target_label", net.label(edges[i].target)},
                      {"betweenness", scores[i]}});
    emit(config, file_name(config),
         dump({{"config", config.to_json()},
               {"network", network_summary(net)},
               {"edges", std::move(rows)}}));
  }
  return 0;
}

int cmd_generate(RunConfig config, const GenerateArgs& args) {
  require_format(config, {OutputFormat::json, OutputFormat::edgelist});
  const auto spec = make_spec(args.model, args.n, args.t, args.p, args.k, args.alpha,
                              component_seed(config.seed, "generate"), config.self_loops);
  config.parameters = {{"model", to_string(spec.model)},
                       {"n", args.n},
                       {"t", args.t},
                       {"p", args.p},
                       {"k", args.k},
                       {"alpha", args.alpha}};
  const auto net = generate(spec);
  auto doc = to_json(net);
  doc["config"] = config.to_json();
  std::ostringstream text;
  write_temporal_edgelist(text, net);

  if (!config.out_dir.empty()) {
    emit(config, "network.json", dump(std::move(doc)));
    emit(config, "network.txt", text.str());
  } else if (config.format == OutputFormat::edgelist) {
    emit(config, "", text.str());
  } else {
    emit(config, "", dump(std::move(doc)));
  }
  return 0;
}

int cmd_dimension(RunConfig config, const DimensionArgs& args) {
  require_format(config, {OutputFormat::json, OutputFormat::csv});
  config.parameters = {{"drivers", args.drivers}, {"rank", args.rank}};
  const auto net = load_network(config);

  DriverSet drivers;
  if (args.drivers == "all") {
    drivers = DriverSet::all(net.node_count());
  } else if (!args.drivers.empty()) {
    std::map<std::string, NodeId> index;
    for (std::size_t i = 0; i < net.node_count(); ++i)
      index.emplace(net.labels()[i], static_cast<NodeId>(i));
    std::istringstream list(args.drivers);
    std::string label;
    while (std::getline(list, label, ',')) {
      auto it = index.find(label);
      if (it == index.end()) throw std::invalid_argument("unknown node label '" + label + "'");
      drivers.insert(it->second);
    }
  }
  const int dimension = controllable_dimension(net, drivers);

  std::optional<std::size_t> rank;
  if (args.rank) {
    std::mt19937_64 rng(component_seed(config.seed, "rank"));
    rank = numeric_rank(realize(net, drivers, rng));
  }

  if (config.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "n,driver_count,dimension" << (rank ? ",numeric_rank" : "") << '\n';
    csv << net.node_count() << ',' << drivers.size() << ',' << dimension;
    if (rank) csv << ',' << *rank;
    csv << '\n';
    emit(config, file_name(config), csv.str());
  } else {
    nlohmann::json doc = {{"config", config.to_json()},
                          {"network", network_summary(net)},
                          {"drivers", labels_of(net, drivers)},
                          {"dimension", dimension},
                          {"fully_controllable", dimension == static_cast<int>(net.node_count())}};
    if (rank) doc["numeric_rank"] = *rank;
    emit(config, file_name(config), dump(std::move(doc)));
  }
  summary(config, "dimension=" + std::to_string(dimension) + ", n=" + std::to_string(net.node_count()));
  return 0;
}

int cmd_bench(RunConfig config, const BenchArgs& args) {
  require_format(config, {OutputFormat::json, OutputFormat::csv});
  if (args.instances == 0) throw std::invalid_argument("--instances must be at least 1");
  config.parameters = {{"model", args.model}, {"n", args.n},         {"t", args.t},
                       {"p", args.p},         {"k", args.k},         {"alpha", args.alpha},
                       {"instances", args.instances}};

  struct Row {
    std::size_t edges;
    DriverSelection lazy, plain;
  };
  std::vector<Row> rows;
  double lazy_ms = 0.0, plain_ms = 0.0;
  for (std::size_t i = 0; i < args.instances; ++i) {
    const auto spec =
        make_spec(args.model, args.n, args.t, args.p, args.k, args.alpha,
                  component_seed(config.seed, "bench/" + std::to_string(i)), config.self_loops);
    const auto net = generate(spec);
    Row row{net.edge_count(), otaha(net), greedy_baseline(net)};
    lazy_ms += row.lazy.elapsed_ms;
    plain_ms += row.plain.elapsed_ms;
    rows.push_back(std::move(row));
  }
  const double ratio = plain_ms / std::max(lazy_ms, 1e-9);

  if (config.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "instance,edges,otaha_drivers,greedy_drivers,otaha_evaluations,greedy_evaluations,"
           "otaha_ms,greedy_ms,ratio\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      csv << i << ',' << r.edges << ',' << r.lazy.size() << ',' << r.plain.size() << ','
          << r.lazy.evaluations << ',' << r.plain.evaluations << ',' << fixed6(r.lazy.elapsed_ms)
          << ',' << fixed6(r.plain.elapsed_ms) << ','
          << fixed6(r.plain.elapsed_ms / std::max(r.lazy.elapsed_ms, 1e-9)) << '\n';
    }
    emit(config, file_name(config), csv.str());
  } else {
    nlohmann::json instances = nlohmann::json::array();
    for (const auto& r : rows)
      instances.push_back({{"edges", r.edges},
                           {"otaha", to_json(r.lazy)},
                           {"greedy", to_json(r.plain)},
                           {"same_sequence", r.lazy.drivers() == r.plain.drivers()},
                           {"ratio", r.plain.elapsed_ms / std::max(r.lazy.elapsed_ms, 1e-9)}});
    emit(config, file_name(config),
         dump({{"config", config.to_json()},
               {"instances", std::move(instances)},
               {"otaha_ms", lazy_ms},
               {"greedy_ms", plain_ms},
               {"ratio", ratio}}));
  }
  summary(config, "otaha_ms=" + fixed6(lazy_ms) + ", greedy_ms=" + fixed6(plain_ms) +
                      ", ratio=" + fixed6(ratio));
  return 0;
}

}  // namespace tempoctrl::cli
