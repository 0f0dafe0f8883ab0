#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace tempoctrl::cli {

struct DetectArgs {
  std::string algorithm = "otaha";
  bool brute_force = false;
  bool allow_large = false;
  bool strict = false;
  std::size_t solutions = 1;
  std::string seed_strategy = "random";
};

struct AttackArgs {
  std::string strategy;
  std::string algorithm = "otaha";
  std::size_t trials = 100;
  double step = 0.05;
  bool recompute = false;
  std::size_t driver_sets = 1;
};

struct GenerateArgs {
  std::string model = "er";
  std::size_t n = 15;
  std::size_t t = 20;
  double p = 0.1;
  double k = 2.0;
  double alpha = 0.5;
};

struct DimensionArgs {
  std::string drivers = "all";
  bool rank = false;
};

struct BenchArgs {
  std::string model = "er";
  std::size_t n = 100;
  std::size_t t = 20;
  double p = 0.01;
  double k = 2.0;
  double alpha = 0.5;
  std::size_t instances = 3;
};

// Each command returns the process exit code and throws on invalid input.
int cmd_detect(RunConfig config, const DetectArgs& args);
int cmd_attack(RunConfig config, const AttackArgs& args);
int cmd_classify(RunConfig config);
int cmd_betweenness(RunConfig config);
int cmd_generate(RunConfig config, const GenerateArgs& args);
int cmd_dimension(RunConfig config, const DimensionArgs& args);
int cmd_bench(RunConfig config, const BenchArgs& args);

}  // namespace tempoctrl::cli
