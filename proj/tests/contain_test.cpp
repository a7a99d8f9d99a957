#include <random>

#include <gtest/gtest.h>

#include "contain/contain.hpp"
#include "contain/errors.hpp"
#include "oracles.hpp"

namespace contain {
namespace {

TEST(ComposeSeedSubgraph, TriangleFromOneSeed) {
  Graph k3 = oracle::complete(3);
  ComposedSubgraph c = compose_seed_subgraph(k3, NodeSet{0});
  EXPECT_EQ(c.nodes, (NodeSet{0, 1, 2}));
  EXPECT_EQ(c.graph.num_edges(), 3u);
  ASSERT_EQ(c.components.size(), 1u);
  ASSERT_TRUE(c.components[0].constraint.has_value());
  EXPECT_NEAR(c.components[0].constraint->mean, 1.125, 1e-12);
}

TEST(ComposeSeedSubgraph, TwoEgoNets) {
  Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  ComposedSubgraph c = compose_seed_subgraph(g, NodeSet{0, 4});
  ASSERT_EQ(c.components.size(), 2u);
  EXPECT_EQ(c.components[0].nodes.size(), 3u);
  EXPECT_EQ(c.components[1].nodes.size(), 3u);
}

TEST(ComposeSeedSubgraph, OrdersComponentsByMeanConstraint) {
  // Star component (center mean lower) and a dyad; the isolated seed 9 comes last.
  Graph g = make_graph(10, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 6}});
  ComposedSubgraph c = compose_seed_subgraph(g, NodeSet{0, 5, 9});
  ASSERT_EQ(c.components.size(), 3u);
  EXPECT_EQ(c.components[0].nodes, (NodeSet{0, 1, 2, 3, 4}));
  EXPECT_EQ(c.components[1].nodes, (NodeSet{5, 6}));
  EXPECT_EQ(c.components[2].nodes, (NodeSet{9}));
  EXPECT_FALSE(c.components[2].constraint.has_value());
  EXPECT_LE(c.components[0].constraint->mean, c.components[1].constraint->mean);
}

TEST(ComposeSeedSubgraph, Errors) {
  EXPECT_THROW(compose_seed_subgraph(oracle::complete(3), NodeSet{}), DomainError);
  EXPECT_THROW(compose_seed_subgraph(oracle::complete(3), NodeSet{7}), DomainError);
}

TEST(Contain, TwoCliqueBridgeSingleSeed) {
  Graph g = oracle::two_cliques_bridge();
  ContainOptions opts;
  opts.k = 1;
  opts.gamma0 = 1.0;
  RankedCommunities r = contain(g, NodeSet{0}, opts);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_DOUBLE_EQ(r.gamma_final, 1.0);
  ASSERT_FALSE(r.entries.empty());
  EXPECT_EQ(r.entries[0].members, (NodeSet{0, 1, 2}));
  EXPECT_EQ(r.entries[0].harmful, 1u);
  EXPECT_DOUBLE_EQ(r.entries[0].score, 1.0 / 3.0);
}

TEST(Contain, SingletonScaleReachesFullBudget) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = oracle::random_graph(20 + rng() % 20, 0.15, rng());
    NodeSet seeds{static_cast<NodeId>(rng() % g.num_nodes())};
    ComposedSubgraph composed = compose_seed_subgraph(g, seeds);
    ContainOptions opts;
    opts.k = composed.nodes.size();
    opts.gamma0 = 0.5;
    opts.delta_gamma = 1e5;
    opts.gamma_max = 1e7;
    RankedCommunities r = contain(g, composed, seeds, opts);
    EXPECT_GE(r.entries.size(), opts.k);
    EXPECT_LE(r.iterations, opts.max_iterations());
  }
}

TEST(Contain, BudgetUnreachableAndGammaExhausted) {
  Graph g = oracle::two_cliques_bridge();
  ContainOptions opts;
  opts.k = 5;  // G' of seed 0 is {0, 1, 2}
  EXPECT_THROW(contain(g, NodeSet{0}, opts), DomainError);
  opts.k = 3;
  opts.gamma0 = 0.5;
  opts.delta_gamma = 0.1;
  opts.gamma_max = 0.6;
  EXPECT_THROW(contain(g, NodeSet{0}, opts), ConvergenceError);
}

TEST(ContainOptions, Validation) {
  ContainOptions opts;
  EXPECT_EQ(opts.max_iterations(), 636u);
  opts.delta_gamma = 0.0;
  EXPECT_THROW(opts.validate(), DomainError);
  opts = ContainOptions{};
  opts.gamma_max = 0.1;
  EXPECT_THROW(opts.validate(), DomainError);
}

TEST(RankCommunities, ScoreIsHarmfulShare) {
  // Community {0,1,2,3} holds 2 seeds.
  Graph g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}});
  Partition p = Partition::from_assignment(g, std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1});
  auto entries = rank_communities(p, NodeSet{0, 1, 2, 3}, NodeSet{0, 2});
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_DOUBLE_EQ(entries[0].score, 0.5);
  EXPECT_EQ(entries[0].size, 4u);
}

TEST(RankCommunities, TieBreaks) {
  // Scores: {0,1} 1/2, {2,3,4,5} 2/4, {6} 0 (intersects G' only through a non-seed).
  Graph g = make_graph(7, {{0, 1}, {2, 3}, {3, 4}, {4, 5}, {1, 2}, {5, 6}});
  Partition p = Partition::from_assignment(g, std::vector<std::uint32_t>{0, 0, 1, 1, 1, 1, 2});
  auto entries = rank_communities(p, NodeSet{0, 1, 2, 3, 4, 5, 6}, NodeSet{0, 2, 5});
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].members, (NodeSet{2, 3, 4, 5}));  // equal score, larger community first
  EXPECT_EQ(entries[1].members, (NodeSet{0, 1}));
  EXPECT_EQ(entries[2].members, (NodeSet{6}));
  EXPECT_DOUBLE_EQ(entries[2].score, 0.0);
}

TEST(ImmunizedNodeSet, Examples) {
  RankedCommunities r;
  r.entries.push_back({0, NodeSet{0, 1, 2, 3, 4, 5, 6}, 1, 7, 1.0 / 7.0});
  r.entries.push_back({1, NodeSet{7, 8, 9}, 0, 3, 0.0});
  EXPECT_EQ(immunized_node_set(r, 1).size(), 7u);
  EXPECT_TRUE(immunized_node_set(r, 0).empty());
  RankedCommunities two;
  two.entries.push_back({0, NodeSet{0, 1, 2}, 1, 3, 1.0 / 3.0});
  two.entries.push_back({1, NodeSet{3, 4, 5, 6}, 1, 4, 0.25});
  EXPECT_EQ(immunized_node_set(two, 2).size(), 7u);
  EXPECT_THROW(immunized_node_set(two, 3), DomainError);
}

// Structural identities and termination over random (graph, seed) instances.
TEST(ContainProperties, RandomInstances) {
  std::mt19937_64 rng(2024);
  int runs = 0;
  while (runs < 50) {
    Graph g = oracle::random_graph(15 + rng() % 40, 0.08 + 0.02 * static_cast<double>(rng() % 5), rng());
    std::vector<NodeId> picks;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 4); ++i) picks.push_back(static_cast<NodeId>(rng() % g.num_nodes()));
    NodeSet seeds(picks);
    ComposedSubgraph composed = compose_seed_subgraph(g, seeds);
    ContainOptions opts;
    opts.k = 1 + rng() % std::min<std::size_t>(5, composed.nodes.size());
    opts.rng_seed = rng();
    RankedCommunities r = contain(g, composed, seeds, opts);
    ++runs;

    EXPECT_LE(static_cast<double>(r.iterations), (opts.gamma_max - opts.gamma0) / opts.delta_gamma + 1.0);
    ASSERT_GE(r.entries.size(), opts.k);
    NodeSet immunized = immunized_node_set(r, opts.k);
    std::size_t summed = 0;
    for (std::size_t i = 0; i < opts.k; ++i) summed += r.entries[i].size;
    EXPECT_EQ(immunized.size(), summed);

    NodeSet covered;
    for (const auto& e : r.entries) {
      covered = set_union(covered, e.members);
      EXPECT_EQ(e.size, e.members.size());
      EXPECT_EQ(e.harmful, set_intersection(e.members, seeds).size());
      EXPECT_FALSE(set_intersection(e.members, composed.nodes).empty());
    }
    EXPECT_TRUE(set_difference(seeds, covered).empty());
    for (std::size_t i = 1; i < r.entries.size(); ++i) {
      const auto& a = r.entries[i - 1];
      const auto& b = r.entries[i];
      const auto lhs = a.harmful * b.size, rhs = b.harmful * a.size;
      EXPECT_GE(lhs, rhs);
      if (lhs == rhs) {
        EXPECT_GE(a.size, b.size);
        if (a.size == b.size) EXPECT_LT(*a.members.begin(), *b.members.begin());
      }
    }
  }
}

}  // namespace
}  // namespace contain
