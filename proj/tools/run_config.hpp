#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl::cli {

enum class OutputFormat { json, csv, edgelist };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string descriptor;
  double resolution = 1.0;
  bool self_loops = true;
  bool directed = true;
  // Explicit flags win over the descriptor and over a JSON network's own flag.
  bool resolution_given = false;
  bool self_loops_given = false;
  bool directed_given = false;

  std::uint64_t seed = 0;
  std::size_t exact_threshold = 20;
  std::optional<std::size_t> max_size;
  std::string out_dir;
  OutputFormat format = OutputFormat::json;

  // Command-specific settings, echoed verbatim into the output.
  nlohmann::json parameters = nlohmann::json::object();

  nlohmann::json to_json() const;
};

std::string to_string(OutputFormat format);
OutputFormat parse_output_format(const std::string& text);

/// Reads the first input as an edge list or, for *.json files, as a serialized
/// network. Descriptor and explicit flags are applied in that order.
TemporalNetwork load_network(const RunConfig& config);

/// Worker threads: hardware concurrency, capped by $TEMPOCTRL_THREADS.
std::size_t thread_budget();

/// Independent stream seed for one named component of a run.
std::uint64_t component_seed(std::uint64_t seed, std::string_view component);

/// Writes `text` to <out_dir>/<name> when an output directory is set, else to
/// stdout.
void emit(const RunConfig& config, const std::string& name, const std::string& text);

}  // namespace tempoctrl::cli
