#pragma once

#include <cstdint>
#include <string_view>

#include "tempoctrl/temporal_network.hpp"

namespace tempoctrl {

enum class GeneratorModel { er, scale_free };

std::string_view to_string(GeneratorModel model);
GeneratorModel parse_generator_model(std::string_view text);

struct GeneratorSpec {
  GeneratorModel model = GeneratorModel::er;
  std::size_t nodes = 10;
  std::size_t snapshots = 10;
  /// Edge probability of each ordered pair (er).
  double probability = 0.1;
  /// Mean undirected degree per snapshot (scale_free).
  double mean_degree = 2.0;
  /// Static-model weight exponent alpha; node i gets weight i^-alpha and the
  /// degree exponent is 1 + 1/alpha.
  double exponent = 0.5;
  std::uint64_t seed = 0;
  bool self_loops = true;
};

/// Every snapshot independently contains each ordered pair (i != j) with
/// probability `probability`.
TemporalNetwork er_temporal(const GeneratorSpec& spec);

/// Every snapshot is an independent draw of the static model: round(N <k> / 2)
/// distinct node pairs sampled with probability proportional to the product of
/// their weights, each oriented uniformly at random.
TemporalNetwork scale_free_temporal(const GeneratorSpec& spec);

/// Dispatches on spec.model.
TemporalNetwork generate(const GeneratorSpec& spec);

}  // namespace tempoctrl
