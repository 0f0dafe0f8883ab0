#include "run_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tempoctrl::cli {

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::edgelist: return "edgelist";
  }
  return "json";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "edgelist" || text == "text") return OutputFormat::edgelist;
  throw std::invalid_argument("unknown output format '" + text + "'");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json thresholds = {{"exact_threshold", exact_threshold}};
  thresholds["max_size"] = max_size ? nlohmann::json(*max_size) : nlohmann::json(nullptr);
  return {{"subcommand", subcommand},
          {"inputs", inputs},
          {"descriptor", descriptor.empty() ? nlohmann::json(nullptr) : nlohmann::json(descriptor)},
          {"resolution", resolution},
          {"self_loops", self_loops},
          {"directed", directed},
          {"seed", seed},
          {"thresholds", std::move(thresholds)},
          {"out_dir", out_dir.empty() ? nlohmann::json(nullptr) : nlohmann::json(out_dir)},
          {"format", to_string(format)},
          {"parameters", parameters}};
}

TemporalNetwork load_network(const RunConfig& config) {
  if (config.inputs.empty()) throw std::invalid_argument("--input is required");
  const std::filesystem::path path = config.inputs.front();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  if (path.extension() == ".json") {
    auto net = network_from_json(nlohmann::json::parse(in));
    return config.self_loops_given ? net.with_self_loops(config.self_loops) : net;
  }

  ParseOptions options;
  if (!config.descriptor.empty()) {
    std::ifstream desc(config.descriptor);
    if (!desc) throw std::runtime_error("cannot open " + config.descriptor);
    options = parse_options_from_json(nlohmann::json::parse(desc), options);
  }
  if (config.resolution_given || config.descriptor.empty()) options.resolution = config.resolution;
  if (config.self_loops_given || config.descriptor.empty()) options.self_loops = config.self_loops;
  if (config.directed_given || config.descriptor.empty()) options.directed = config.directed;
  return parse_temporal_edgelist(in, options);
}

std::size_t thread_budget() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TEMPOCTRL_THREADS"); env && *env) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) threads = std::min(threads, static_cast<std::size_t>(cap));
  }
  return threads;
}

std::uint64_t component_seed(std::uint64_t seed, std::string_view component) {
  // FNV-1a over the name, then one splitmix64 round.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : component) h = (h ^ c) * 1099511628211ull;
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void emit(const RunConfig& config, const std::string& name, const std::string& text) {
  if (config.out_dir.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const std::filesystem::path dir = config.out_dir;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << text;
}

}  // namespace tempoctrl::cli
