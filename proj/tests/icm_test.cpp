#include <random>

#include <gtest/gtest.h>

#include "contain/errors.hpp"
#include "contain/icm.hpp"
#include "oracles.hpp"

namespace contain {
namespace {

CascadeConfig config(double p, std::size_t trials = 200, std::uint64_t seed = 42) {
  CascadeConfig cfg;
  cfg.p = p;
  cfg.trials = trials;
  cfg.rng_seed = seed;
  return cfg;
}

NodeSet random_subset(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<NodeId> v;
  for (std::size_t i = 0; i < count; ++i) v.push_back(static_cast<NodeId>(rng() % n));
  return NodeSet(v);
}

TEST(Simulate, ClosedFormOracles) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + rng() % 50;
    Graph g = oracle::random_graph(n, 0.08, rng());
    NodeSet seeds = random_subset(rng, n, 1 + rng() % 4);
    NodeSet immunized = random_subset(rng, n, rng() % 6);

    SpreadEstimate none = simulate(g, seeds, immunized, config(0.0, 50));
    EXPECT_EQ(none.mean_infected, static_cast<double>(set_difference(seeds, immunized).size()));
    EXPECT_EQ(none.std_infected, 0.0);

    SpreadEstimate all = simulate(g, seeds, immunized, config(1.0, 50));
    EXPECT_EQ(all.mean_infected, static_cast<double>(oracle::reachable_count(g, seeds, immunized)));
    EXPECT_EQ(all.std_infected, 0.0);
    EXPECT_EQ(all.trials, 50u);
  }
}

TEST(Simulate, ImmunizedSeedsNeverSpread) {
  Graph g = oracle::cycle(10);
  EXPECT_EQ(simulate(g, NodeSet{1, 4}, NodeSet{1, 4, 7}, config(0.9)).mean_infected, 0.0);
}

TEST(SavedNodes, Examples) {
  Graph g = oracle::two_cliques_bridge();
  EXPECT_EQ(saved_nodes(g, NodeSet{0}, NodeSet{}, config(0.4)), 0.0);
  // Node 2 is the only way out of clique {0,1,2}: immunizing it saves 2 and the far clique.
  EXPECT_EQ(saved_nodes(g, NodeSet{0}, NodeSet{2}, config(1.0)), 4.0);
  EXPECT_EQ(saved_nodes(g, NodeSet{0, 3}, NodeSet{3, 5}, config(0.0)), 1.0);
}

TEST(Simulate, MonotoneUnderCommonRandomNumbers) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + rng() % 60;
    Graph g = oracle::random_graph(n, 0.06, rng());
    NodeSet seeds = random_subset(rng, n, 2);
    NodeSet small = random_subset(rng, n, 3);
    NodeSet large = set_union(small, random_subset(rng, n, 5));
    const std::uint64_t seed = rng();
    for (std::size_t t = 0; t < 50; ++t) {
      // Per trial: more immunization never infects more; larger p never infects fewer.
      EXPECT_LE(simulate_trial(g, seeds, large, config(0.3, 1, seed), t),
                simulate_trial(g, seeds, small, config(0.3, 1, seed), t));
      EXPECT_LE(simulate_trial(g, seeds, small, config(0.2, 1, seed), t),
                simulate_trial(g, seeds, small, config(0.5, 1, seed), t));
    }
  }
}

TEST(Simulate, ReproducibleAndThreadInvariant) {
  Graph g = oracle::random_graph(300, 0.02, 3);
  NodeSet seeds{1, 50, 120};
  CascadeConfig cfg = config(0.15, 400, 99);
  SpreadEstimate a = simulate(g, seeds, NodeSet{}, cfg);
  SpreadEstimate b = simulate(g, seeds, NodeSet{}, cfg);
  cfg.threads = 4;
  SpreadEstimate c = simulate(g, seeds, NodeSet{}, cfg);
  EXPECT_EQ(a.mean_infected, b.mean_infected);
  EXPECT_EQ(a.mean_infected, c.mean_infected);
  EXPECT_EQ(a.std_infected, c.std_infected);
  cfg.rng_seed = 100;
  EXPECT_NE(simulate(g, seeds, NodeSet{}, cfg).mean_infected, a.mean_infected);
}

TEST(Simulate, WeightsAsProbabilities) {
  Graph g = make_graph(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 0.0}});
  CascadeConfig cfg = config(0.0, 20);
  cfg.weights_as_probabilities = true;
  EXPECT_EQ(simulate(g, NodeSet{0}, NodeSet{}, cfg).mean_infected, 2.0);
}

TEST(EdgeCoin, UniformRange) {
  double sum = 0.0;
  for (std::size_t t = 0; t < 10000; ++t) {
    const double x = edge_coin(7, t, 3);
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / 10000.0, 0.5, 0.02);
  EXPECT_EQ(edge_coin(1, 2, 3), edge_coin(1, 2, 3));
}

TEST(CascadeConfig, Validation) {
  EXPECT_THROW(config(1.5).validate(), DomainError);
  EXPECT_THROW(config(-0.1).validate(), DomainError);
  EXPECT_THROW(config(0.5, 0).validate(), DomainError);
  Graph g = oracle::path(3);
  EXPECT_THROW(simulate(g, NodeSet{5}, NodeSet{}, config(0.5)), DomainError);
}

}  // namespace
}  // namespace contain
