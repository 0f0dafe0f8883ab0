#include "tempoctrl/generate.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace tempoctrl {

namespace {

void check_shape(const GeneratorSpec& spec) {
  if (spec.nodes == 0) throw std::invalid_argument("generator needs at least one node");
  if (spec.snapshots == 0) throw std::invalid_argument("generator needs at least one snapshot");
}

// One engine per generator, seeded from the user seed and a model tag so
// different models never share a stream.
std::mt19937_64 make_engine(const GeneratorSpec& spec) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(spec.model)};
  return std::mt19937_64(seq);
}

}  // namespace

std::string_view to_string(GeneratorModel model) {
  return model == GeneratorModel::er ? "er" : "scale_free";
}

GeneratorModel parse_generator_model(std::string_view text) {
  if (text == "er") return GeneratorModel::er;
  if (text == "scale_free" || text == "sf" || text == "scale-free") return GeneratorModel::scale_free;
  throw std::invalid_argument("unknown generator model '" + std::string(text) + "'");
}

TemporalNetwork er_temporal(const GeneratorSpec& spec) {
  check_shape(spec);
  if (!(spec.probability >= 0.0 && spec.probability <= 1.0))
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  auto rng = make_engine(spec);
  std::bernoulli_distribution keep(spec.probability);
  const auto n = static_cast<NodeId>(spec.nodes);
  std::vector<std::vector<Edge>> snapshots(spec.snapshots);
  for (auto& snap : snapshots)
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        if (i != j && keep(rng)) snap.push_back({i, j});
  return TemporalNetwork(spec.nodes, std::move(snapshots), spec.self_loops);
}

TemporalNetwork scale_free_temporal(const GeneratorSpec& spec) {
  check_shape(spec);
  if (!(spec.mean_degree >= 0.0)) throw std::invalid_argument("mean degree must be non-negative");
  if (!(spec.exponent >= 0.0)) throw std::invalid_argument("static-model exponent must be non-negative");
  const double n = static_cast<double>(spec.nodes);
  const auto pairs = static_cast<std::size_t>(std::llround(n * spec.mean_degree / 2.0));
  if (pairs > spec.nodes * (spec.nodes - 1) / 2)
    throw std::invalid_argument("mean degree too large for a simple graph on " +
                                std::to_string(spec.nodes) + " nodes");

  std::vector<double> weight(spec.nodes);
  for (std::size_t i = 0; i < spec.nodes; ++i)
    weight[i] = std::pow(static_cast<double>(i + 1), -spec.exponent);

  auto rng = make_engine(spec);
  std::discrete_distribution<NodeId> draw(weight.begin(), weight.end());
  std::bernoulli_distribution flip(0.5);
  std::vector<std::vector<Edge>> snapshots(spec.snapshots);
  for (auto& snap : snapshots) {
    std::set<std::pair<NodeId, NodeId>> chosen;
    while (chosen.size() < pairs) {
      NodeId a = draw(rng);
      NodeId b = draw(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!chosen.emplace(a, b).second) continue;
      if (flip(rng))
        snap.push_back({a, b});
      else
        snap.push_back({b, a});
    }
  }
  return TemporalNetwork(spec.nodes, std::move(snapshots), spec.self_loops);
}

TemporalNetwork generate(const GeneratorSpec& spec) {
  return spec.model == GeneratorModel::er ? er_temporal(spec) : scale_free_temporal(spec);
}

}  // namespace tempoctrl
