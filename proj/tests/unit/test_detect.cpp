#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "tempoctrl/detect.hpp"
#include "tempoctrl/generate.hpp"
#include "tempoctrl/rank_oracle.hpp"

using namespace tempoctrl;

namespace {

TemporalNetwork er(std::size_t n, std::size_t t, double p, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.nodes = n;
  spec.snapshots = t;
  spec.probability = p;
  spec.seed = seed;
  return generate(spec);
}

TemporalNetwork edgeless(std::size_t n) { return TemporalNetwork(n, {{}, {}}, true); }

}  // namespace

TEST(LazyGreedy, WalkthroughTableSelectionAndEvaluations) {
  auto lazy_oracle = oracle::lazy_walkthrough_oracle();
  auto lazy = lazy_greedy(lazy_oracle);
  EXPECT_EQ(lazy.drivers(), (std::vector<NodeId>{0, 2, 3}));
  EXPECT_EQ(lazy.f_trace(), (std::vector<int>{5, 8, 10}));
  EXPECT_EQ(lazy.gains(), (std::vector<int>{5, 3, 2}));
  EXPECT_EQ(lazy.evaluations, 13u);
  EXPECT_TRUE(lazy.complete());

  auto plain_oracle = oracle::lazy_walkthrough_oracle();
  auto plain = plain_greedy(plain_oracle);
  EXPECT_EQ(plain.drivers(), lazy.drivers());
  EXPECT_EQ(plain.f_trace(), lazy.f_trace());
  EXPECT_EQ(plain.evaluations, 27u);
}

TEST(LazyGreedy, StrictModeNeverCostsFewerEvaluations) {
  auto table = oracle::lazy_walkthrough_oracle();
  auto strict = lazy_greedy(table, {}, LazyGreedyOptions{true});
  EXPECT_EQ(strict.drivers(), (std::vector<NodeId>{0, 2, 3}));
  EXPECT_GE(strict.evaluations, 13u);
  for (const auto& step : strict.steps) EXPECT_FALSE(step.repicked);
}

TEST(LazyGreedy, ZeroGainsAreUncontrollable) {
  oracle::TableGainOracle flat({{1, 0, 0}, {0, 0, 0}}, 3);
  try {
    lazy_greedy(flat);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "uncontrollable instance");
  }
  oracle::TableGainOracle flat_plain({{1, 0, 0}, {0, 0, 0}}, 3);
  EXPECT_THROW(plain_greedy(flat_plain), std::runtime_error);
}

TEST(Otaha, EdgelessNetworkNeedsEveryNode) {
  auto sel = otaha(edgeless(4));
  EXPECT_EQ(sel.size(), 4u);
  EXPECT_EQ(sel.gains(), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(sel.drivers(), (std::vector<NodeId>{0, 1, 2, 3}));
  auto base = greedy_baseline(edgeless(4));
  EXPECT_EQ(base.size(), 4u);
}

TEST(Otaha, MatchesBruteForceOnSmallErNetwork) {
  auto net = er(10, 5, 0.25, 12);
  auto sel = otaha(net);
  auto exact = brute_force(net);
  ASSERT_TRUE(exact.minimum_size.has_value());
  EXPECT_EQ(sel.size(), *exact.minimum_size);
  EXPECT_TRUE(check_bound(sel, *exact.minimum_size));
  EXPECT_TRUE(is_fully_controllable(net, sel.driver_set()));
}

TEST(Otaha, SameSequenceAsPlainGreedy) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto net = er(14, 8, 0.05 + 0.02 * static_cast<double>(seed % 5), seed);
    auto lazy = otaha(net);
    auto plain = greedy_baseline(net);
    EXPECT_EQ(lazy.drivers(), plain.drivers()) << "seed " << seed;
    EXPECT_EQ(lazy.f_trace(), plain.f_trace());
    EXPECT_LE(lazy.evaluations, plain.evaluations);
  }
}

TEST(Otaha, RecordedGainsAreTrueMarginalGains) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto net = er(12, 6, 0.1, 50 + seed);
    auto sel = otaha(net);
    SetFunction f(net);
    DriverSet d;
    int previous = 0;
    for (const auto& step : sel.steps) {
      d.insert(step.node);
      const int value = f(d);
      EXPECT_EQ(step.value, value);
      if (!step.repicked) EXPECT_EQ(step.gain, value - previous);
      EXPECT_GT(value, previous);
      previous = value;
    }
    EXPECT_EQ(previous, 12);
  }
}

TEST(Otaha, SeedIsCommittedFirst) {
  auto net = er(10, 5, 0.2, 4);
  const std::vector<NodeId> seed{7};
  auto sel = otaha(net, seed);
  ASSERT_FALSE(sel.steps.empty());
  EXPECT_EQ(sel.steps[0].node, 7);
  EXPECT_TRUE(sel.steps[0].seeded);
  EXPECT_TRUE(sel.complete());
  EXPECT_TRUE(is_fully_controllable(net, sel.driver_set()));
}

TEST(Otaha, SeedThatAlreadyControlsIsReturnedAsIs) {
  auto net = edgeless(3);
  const std::vector<NodeId> seed{2, 0, 1};
  auto sel = otaha(net, seed);
  EXPECT_EQ(sel.drivers(), seed);
  for (const auto& step : sel.steps) EXPECT_TRUE(step.seeded);
}

TEST(Otaha, JsonHasSelectionFields) {
  auto net = er(6, 3, 0.3, 2);
  auto doc = to_json(otaha(net), &net);
  for (const char* key : {"algorithm", "drivers", "gains", "f_trace", "evaluations", "elapsed_ms"})
    EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["algorithm"], "otaha");
  EXPECT_EQ(doc["labels"].size(), doc["drivers"].size());
}

TEST(BruteForce, SingleNodeWithRetention) {
  TemporalNetwork net(1, {{}}, true);
  auto r = brute_force(net);
  ASSERT_TRUE(r.minimum_size.has_value());
  EXPECT_EQ(*r.minimum_size, 1u);
  EXPECT_EQ(r.optimal_sets.size(), 1u);
}

TEST(BruteForce, EverySetOfMinimumSizeIsListed) {
  auto net = er(8, 4, 0.3, 21);
  auto r = brute_force(net);
  ASSERT_TRUE(r.minimum_size.has_value());
  const std::size_t k = *r.minimum_size;
  // Recount by walking every subset of size k and k - 1.
  std::set<DriverSet> expected;
  std::size_t smaller_hits = 0;
  for (std::uint32_t mask = 0; mask < (1u << 8); ++mask) {
    const auto bits = static_cast<std::size_t>(__builtin_popcount(mask));
    if (bits != k && bits + 1 != k) continue;
    DriverSet d;
    for (NodeId v = 0; v < 8; ++v)
      if (mask & (1u << v)) d.insert(v);
    if (controllable_dimension(net, d) != 8) continue;
    if (bits == k)
      expected.insert(d);
    else
      ++smaller_hits;
  }
  EXPECT_EQ(smaller_hits, 0u);
  EXPECT_EQ(std::set<DriverSet>(r.optimal_sets.begin(), r.optimal_sets.end()), expected);
  EXPECT_TRUE(std::is_sorted(r.optimal_sets.begin(), r.optimal_sets.end()));
}

TEST(BruteForce, MinimumSetsAreFullRankNumerically) {
  auto net = er(8, 4, 0.3, 21);
  auto r = brute_force(net, BruteForceOptions{.first_only = true});
  ASSERT_EQ(r.optimal_sets.size(), 1u);
  std::mt19937_64 rng(3);
  EXPECT_EQ(numeric_rank(realize(net, r.optimal_sets[0], rng)), 8u);
}

TEST(BruteForce, GuardAndLimit) {
  TemporalNetwork big(30, {{}}, true);
  EXPECT_THROW(brute_force(big), std::length_error);
  BruteForceOptions opts;
  opts.allow_large = true;
  opts.max_size = 2;
  auto r = brute_force(big, opts);
  EXPECT_FALSE(r.minimum_size.has_value());
  EXPECT_TRUE(r.optimal_sets.empty());
}

TEST(CheckBound, HoldsWhenSizesMatch) {
  auto sel = otaha(edgeless(3));
  EXPECT_TRUE(check_bound(sel, 3));
  DriverSelection fake;
  fake.steps = {{0, 1, 1}, {1, 1, 2}, {2, 1, 3}, {3, 1, 4}};
  fake.target = 4;
  EXPECT_FALSE(check_bound(fake, 1));  // 4 > (1 + ln 1) * 1
  EXPECT_TRUE(check_bound(fake, 4));
}

TEST(CheckBound, HoldsOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto net = er(9, 5, 0.15, 300 + seed);
    auto sel = otaha(net);
    auto exact = brute_force(net, BruteForceOptions{.first_only = true});
    ASSERT_TRUE(exact.minimum_size.has_value());
    EXPECT_GE(sel.size(), *exact.minimum_size);
    EXPECT_TRUE(check_bound(sel, *exact.minimum_size));
    EXPECT_LE(static_cast<double>(sel.size()),
              (1.0 + std::log(static_cast<double>(sel.first_value()))) *
                  static_cast<double>(*exact.minimum_size));
  }
}

TEST(MultiSolutions, SingleRunIsPlainOtaha) {
  auto net = er(10, 5, 0.25, 9);
  auto runs = multi_solutions(net, 1, SeedStrategy::random, 5);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].drivers(), otaha(net).drivers());
}

TEST(MultiSolutions, EdgelessHasOneSolution) {
  auto runs = multi_solutions(edgeless(3), 5, SeedStrategy::degree, 1);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].driver_set(), DriverSet::all(3));
}

TEST(MultiSolutions, EverySetControlsAndSetsAreDistinct) {
  auto net = er(10, 5, 0.25, 9);
  for (auto strategy : {SeedStrategy::random, SeedStrategy::degree}) {
    auto runs = multi_solutions(net, 10, strategy, 77);
    EXPECT_GE(runs.size(), 1u);
    EXPECT_LE(runs.size(), 10u);
    std::set<DriverSet> seen;
    for (const auto& r : runs) {
      EXPECT_TRUE(is_fully_controllable(net, r.driver_set()));
      EXPECT_TRUE(seen.insert(r.driver_set()).second);
    }
  }
}
