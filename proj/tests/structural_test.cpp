#include <random>

#include <gtest/gtest.h>

#include "contain/errors.hpp"
#include "contain/structural.hpp"
#include "oracles.hpp"

namespace contain {
namespace {

TEST(TieProportions, Examples) {
  Graph s = oracle::star(3);
  TieProportions p(s);
  for (NodeId leaf = 1; leaf <= 3; ++leaf) {
    EXPECT_DOUBLE_EQ(p(0, leaf), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(p(leaf, 0), 1.0);
  }
  EXPECT_DOUBLE_EQ(p(1, 2), 0.0);
  Graph k3 = oracle::complete(3);
  TieProportions tri(k3);
  EXPECT_DOUBLE_EQ(tri(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(tri(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(tri(1, 1), 0.0);
}

TEST(TieProportions, RowsSumToOne) {
  Graph g = oracle::random_graph(25, 0.2, 4);
  TieProportions p(g);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) == 0) continue;
    double sum = 0.0;
    for (double x : p.row(v)) sum += x;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(NodeConstraint, HandEvaluations) {
  Graph s = oracle::star(3);
  EXPECT_NEAR(node_constraint(s, 0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(node_constraint(s, 2), 1.0, 1e-12);
  EXPECT_NEAR(node_constraint(oracle::complete(3), 1), 1.125, 1e-12);
  EXPECT_NEAR(oracle::dense_constraint(oracle::complete(3), 1), 1.125, 1e-12);
}

TEST(NodeConstraint, IsolatedNodeIsUndefined) {
  Graph g = make_graph(3, {{0, 1}});
  EXPECT_THROW(node_constraint(g, 2), DomainError);
}

TEST(NodeConstraint, AsTypesetModeOnStar) {
  // p(leaf, center) = 1 for each of the 3 leaves; the inner sums only visit the center.
  EXPECT_NEAR(node_constraint(oracle::star(3), 0, ConstraintMode::as_typeset), 3.0, 1e-12);
  // Triangle: p_uv = 1/2, inner over w in N(u)\{v} gives 1/2 * 1/2.
  EXPECT_NEAR(node_constraint(oracle::complete(3), 0, ConstraintMode::as_typeset), 1.125, 1e-12);
}

TEST(NodeConstraint, MatchesDenseEvaluatorOnSmallGraphs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<Edge> edges;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        if (rng() % 2) edges.push_back({a, b, 0.5 + static_cast<double>(rng() % 4)});
    Graph g = make_graph(n, edges);
    ConstraintCalculator calc(g);
    for (NodeId v = 0; v < n; ++v) {
      if (g.degree(v) == 0) continue;
      const double c = calc(v);
      EXPECT_NEAR(c, oracle::dense_constraint(g, v), 1e-12);
      EXPECT_GT(c, 0.0);
    }
  }
}

TEST(NodeConstraint, ScaleInvariant) {
  Graph g = oracle::random_graph(20, 0.25, 8);
  std::vector<Edge> scaled = g.edges();
  for (auto& e : scaled) e.weight *= 3.7;
  Graph h = make_graph(g.num_nodes(), scaled);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) == 0) continue;
    EXPECT_NEAR(node_constraint(g, v), node_constraint(h, v), 1e-12);
  }
}

TEST(NodeConstraint, DyadEndpointIsOne) {
  Graph dyad = make_graph(2, {{0, 1}});
  EXPECT_DOUBLE_EQ(node_constraint(dyad, 0), 1.0);
  auto profile = component_constraint_profile(dyad, NodeSet{0});
  EXPECT_DOUBLE_EQ(profile.min, 1.0);
  EXPECT_DOUBLE_EQ(profile.mean, 1.0);
  EXPECT_DOUBLE_EQ(profile.max, 1.0);
}

TEST(ComponentProfile, Examples) {
  auto tri = component_constraint_profile(oracle::complete(3), NodeSet{0, 1, 2});
  EXPECT_NEAR(tri.min, 1.125, 1e-12);
  EXPECT_NEAR(tri.mean, 1.125, 1e-12);
  EXPECT_NEAR(tri.max, 1.125, 1e-12);
  auto center = component_constraint_profile(oracle::star(3), NodeSet{0});
  EXPECT_NEAR(center.mean, 1.0 / 3.0, 1e-12);
  EXPECT_THROW(component_constraint_profile(oracle::star(3), NodeSet{}), DomainError);
  EXPECT_THROW(component_constraint_profile(make_graph(2, std::span<const Edge>{}), NodeSet{0}), DomainError);
}

}  // namespace
}  // namespace contain
