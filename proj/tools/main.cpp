#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

using namespace tempoctrl::cli;

namespace {

struct CommonFlags {
  std::string format = "json";
  CLI::Option* resolution = nullptr;
  CLI::Option* self_loops = nullptr;
  CLI::Option* directed = nullptr;
};

// Flags shared by every subcommand; input flags only where a network is read.
CommonFlags add_common(CLI::App* sub, RunConfig& config, bool reads_input) {
  CommonFlags flags;
  if (reads_input) {
    sub->add_option("--input", config.inputs, "Temporal edge list (src dst ts) or network JSON")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--descriptor", config.descriptor, "JSON {resolution, directed, self_loops}")
        ->check(CLI::ExistingFile);
    flags.resolution =
        sub->add_option("--resolution", config.resolution, "Snapshot width in timestamp units");
    flags.directed = sub->add_flag("--directed,!--undirected", config.directed,
                                   "Treat each line as one directed edge (default)");
  }
  flags.self_loops = sub->add_flag("--self-loops,!--no-self-loops", config.self_loops,
                                   "Nodes retain their state between steps (default)");
  sub->add_option("--seed", config.seed, "Master random seed");
  sub->add_option("--out", config.out_dir, "Output directory (default: stdout)");
  return flags;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural controllability and driver-node detection for temporal networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tempoctrl 0.1.0");

  RunConfig config;
  DetectArgs detect;
  AttackArgs attack;
  GenerateArgs gen;
  DimensionArgs dim;
  BenchArgs bench;

  auto* detect_cmd = app.add_subcommand("detect", "Find a driver-node set");
  auto detect_flags = add_common(detect_cmd, config, true);
  detect_cmd->add_option("--format", detect_flags.format)->check(CLI::IsMember({"json", "csv"}));
  detect_cmd->add_option("--algorithm", detect.algorithm)
      ->check(CLI::IsMember({"otaha", "greedy", "brute"}));
  detect_cmd->add_flag("--brute-force", detect.brute_force, "Also report the exact minimum");
  detect_cmd->add_flag("--allow-large", detect.allow_large, "Lift the brute-force node guard");
  detect_cmd->add_option("--max-size", config.max_size, "Largest set size brute force tries");
  detect_cmd->add_flag("--strict", detect.strict, "Re-evaluate re-picked nodes");
  detect_cmd->add_option("--solutions", detect.solutions, "Number of distinct driver sets");
  detect_cmd->add_option("--seed-strategy", detect.seed_strategy)
      ->check(CLI::IsMember({"random", "degree"}));

  auto* attack_cmd = app.add_subcommand("attack", "Edge-removal attack traces");
  auto attack_flags = add_common(attack_cmd, config, true);
  attack_cmd->add_option("--format", attack_flags.format)->check(CLI::IsMember({"json", "csv"}));
  attack_cmd->add_option("--strategy", attack.strategy)
      ->required()
      ->check(CLI::IsMember({"random", "asc", "desc", "ascending", "descending"}));
  attack_cmd->add_option("--algorithm", attack.algorithm)
      ->check(CLI::IsMember({"otaha", "greedy", "brute"}));
  attack_cmd->add_option("--trials", attack.trials, "Permutations for the random strategy");
  attack_cmd->add_option("--step", attack.step, "Removed fraction between samples");
  attack_cmd->add_flag("--recompute", attack.recompute, "Re-rank edges after every step");
  attack_cmd->add_option("--driver-sets", attack.driver_sets, "Driver sets to attack");
  attack_cmd->add_option("--max-size", config.max_size);

  auto* classify_cmd = app.add_subcommand("classify", "Critical, ordinary and redundant edges");
  auto classify_flags = add_common(classify_cmd, config, true);
  classify_cmd->add_option("--format", classify_flags.format)->check(CLI::IsMember({"json", "csv"}));
  classify_cmd->add_option("--exact-threshold", config.exact_threshold,
                           "Largest N classified with brute-force references");

  auto* betweenness_cmd = app.add_subcommand("betweenness", "Edge betweenness on the layered graph");
  auto betweenness_flags = add_common(betweenness_cmd, config, true);
  betweenness_cmd->add_option("--format", betweenness_flags.format)
      ->check(CLI::IsMember({"json", "csv"}));

  auto* generate_cmd = app.add_subcommand("generate", "Synthetic temporal networks");
  auto generate_flags = add_common(generate_cmd, config, false);
  generate_cmd->add_option("--format", generate_flags.format)
      ->check(CLI::IsMember({"json", "edgelist"}));
  generate_cmd->add_option("--model", gen.model)->check(CLI::IsMember({"er", "sf", "scale_free"}));
  generate_cmd->add_option("--n", gen.n, "Nodes");
  generate_cmd->add_option("--t", gen.t, "Snapshots");
  generate_cmd->add_option("--p", gen.p, "Edge probability (er)");
  generate_cmd->add_option("--k", gen.k, "Mean degree (sf)");
  generate_cmd->add_option("--alpha", gen.alpha, "Weight exponent (sf)");

  auto* dimension_cmd = app.add_subcommand("dimension", "Controllable dimension of a driver set");
  auto dimension_flags = add_common(dimension_cmd, config, true);
  dimension_cmd->add_option("--format", dimension_flags.format)
      ->check(CLI::IsMember({"json", "csv"}));
  dimension_cmd->add_option("--drivers", dim.drivers, "'all' or comma-separated node labels");
  dimension_cmd->add_flag("--rank", dim.rank, "Also report a random numeric rank");

  auto* bench_cmd = app.add_subcommand("bench", "OTaHa against plain greedy on generated networks");
  auto bench_flags = add_common(bench_cmd, config, false);
  bench_cmd->add_option("--format", bench_flags.format)->check(CLI::IsMember({"json", "csv"}));
  bench_cmd->add_option("--model", bench.model)->check(CLI::IsMember({"er", "sf", "scale_free"}));
  bench_cmd->add_option("--n", bench.n);
  bench_cmd->add_option("--t", bench.t);
  bench_cmd->add_option("--p", bench.p);
  bench_cmd->add_option("--k", bench.k);
  bench_cmd->add_option("--alpha", bench.alpha);
  bench_cmd->add_option("--instances", bench.instances);

  CLI11_PARSE(app, argc, argv);

  const CommonFlags* flags = nullptr;
  CLI::App* chosen = app.get_subcommands().front();
  for (auto [cmd, f] : {std::pair{detect_cmd, &detect_flags}, {attack_cmd, &attack_flags},
                        {classify_cmd, &classify_flags}, {betweenness_cmd, &betweenness_flags},
                        {generate_cmd, &generate_flags}, {dimension_cmd, &dimension_flags},
                        {bench_cmd, &bench_flags}})
    if (cmd == chosen) flags = f;

  config.subcommand = chosen->get_name();
  try {
    config.format = parse_output_format(flags->format);
    config.resolution_given = flags->resolution && flags->resolution->count() > 0;
    config.directed_given = flags->directed && flags->directed->count() > 0;
    config.self_loops_given = flags->self_loops->count() > 0;

    if (chosen == detect_cmd) return cmd_detect(config, detect);
    if (chosen == attack_cmd) return cmd_attack(config, attack);
    if (chosen == classify_cmd) return cmd_classify(config);
    if (chosen == betweenness_cmd) return cmd_betweenness(config);
    if (chosen == generate_cmd) return cmd_generate(config, gen);
    if (chosen == dimension_cmd) return cmd_dimension(config, dim);
    if (chosen == bench_cmd) return cmd_bench(config, bench);
  } catch (const std::exception& e) {
    std::cerr << "tempoctrl " << config.subcommand << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}
