#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "contain/errors.hpp"
#include "contain/graph.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace contain {
namespace {

using ::testing::ElementsAre;

TEST(EdgeListLoader, MergesReversedDuplicates) {
  TempFile file("0 1\n1 0\n");
  Graph g = load_edge_list(file.path());
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_DOUBLE_EQ(g.edge_weight(0, 1), 2.0);
}

TEST(EdgeListLoader, EmptyFileGivesEmptyGraph) {
  TempFile file("");
  Graph g = load_edge_list(file.path());
  EXPECT_EQ(g.num_nodes(), 0u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(EdgeListLoader, SkipsCommentsAndCountsSelfLoops) {
  TempFile file("# snap header\n% matrix market style\n\n3 3\n3 7\n7 9\n");
  LoadStats stats;
  Graph g = load_edge_list(file.path(), EdgeListFormat::whitespace, false, &stats);
  EXPECT_EQ(stats.self_loops_dropped, 1u);
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_THAT(g.external_ids(), ElementsAre("3", "7", "9"));
}

TEST(EdgeListLoader, OrdersNumericIdsNumerically) {
  TempFile file("10 2\n2 1\n");
  Graph g = load_edge_list(file.path());
  EXPECT_THAT(g.external_ids(), ElementsAre("1", "2", "10"));
  EXPECT_EQ(g.internal_id("10"), 2u);
}

TEST(EdgeListLoader, StringIdsSortLexicographically) {
  TempFile file("bob,alice\ncarol,alice\n");
  Graph g = load_edge_list(file.path(), EdgeListFormat::csv);
  EXPECT_THAT(g.external_ids(), ElementsAre("alice", "bob", "carol"));
  EXPECT_EQ(g.degree(g.internal_id("alice")), 2u);
}

TEST(EdgeListLoader, WeightedLinesSumWeights) {
  TempFile file("a b 0.5\nb a 1.25\nb c 2\n");
  Graph g = load_edge_list(file.path(), EdgeListFormat::whitespace, true);
  EXPECT_DOUBLE_EQ(g.edge_weight(g.internal_id("a"), g.internal_id("b")), 1.75);
  EXPECT_DOUBLE_EQ(g.weighted_degree(g.internal_id("b")), 3.75);
  EXPECT_DOUBLE_EQ(g.total_weight(), 7.5);
}

TEST(EdgeListLoader, MalformedLineReportsLineNumber) {
  TempFile file("0 1\n# ok\n1 2 3\n");
  try {
    load_edge_list(file.path());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  TempFile weights("0 1 x\n");
  EXPECT_THROW(load_edge_list(weights.path(), EdgeListFormat::whitespace, true), ParseError);
  TempFile negative("0 1 -2\n");
  EXPECT_THROW(load_edge_list(negative.path(), EdgeListFormat::whitespace, true), ParseError);
}

TEST(NodeSetFile, RejectsUnknownIds) {
  Graph g = oracle::path(3);
  TempFile good("# seeds\n2\n0\n");
  EXPECT_EQ(load_node_set(good.path(), g), (NodeSet{0, 2}));
  TempFile bad("0\n42\n");
  EXPECT_THROW(load_node_set(bad.path(), g), ParseError);
}

TEST(InducedSubgraph, TriangleEdgeSubset) {
  Graph tri = oracle::complete(3);
  Graph sub = induced_subgraph(tri, NodeSet{0, 1});
  EXPECT_EQ(sub.num_nodes(), 2u);
  EXPECT_EQ(sub.num_edges(), 1u);
  EXPECT_EQ(induced_subgraph(tri, NodeSet{}).num_nodes(), 0u);
  EXPECT_THROW(induced_subgraph(tri, NodeSet{0, 5}), DomainError);
}

TEST(InducedSubgraph, MatchesHandFilterOnDisjointTriangles) {
  Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  NodeSet keep{3, 4, 5};
  Graph sub = induced_subgraph(g, keep);
  std::size_t expected = 0;
  for (const Edge& e : g.edges()) expected += keep.contains(e.u) && keep.contains(e.v);
  EXPECT_EQ(sub.num_edges(), expected);
  EXPECT_EQ(sub.num_edges(), 3u);
  EXPECT_THAT(sub.external_ids(), ElementsAre("3", "4", "5"));
}

TEST(Neighborhood, Examples) {
  Graph s = oracle::star(3);
  EXPECT_EQ(neighborhood(s, 0), (NodeSet{1, 2, 3}));
  Graph p = oracle::path(3);
  EXPECT_EQ(neighborhood(p, 1), (NodeSet{0, 2}));
  Graph lonely = make_graph(2, std::span<const Edge>{});
  EXPECT_TRUE(neighborhood(lonely, 1).empty());
  EXPECT_THROW(neighborhood(p, 3), DomainError);
}

TEST(ConnectedComponents, Examples) {
  Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  auto comps = connected_components(g);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], (NodeSet{0, 1, 2}));
  EXPECT_EQ(comps[1], (NodeSet{3, 4, 5}));
  EXPECT_EQ(connected_components(oracle::cycle(5)).size(), 1u);
  EXPECT_EQ(connected_components(make_graph(5, std::span<const Edge>{})).size(), 5u);
}

// Properties over random graphs: symmetric adjacency, degree sums, component partition,
// and induced_subgraph(g, V) reproducing g.
TEST(GraphProperties, RandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    Graph g = oracle::random_graph(n, 0.15, rng());
    double degree_sum = 0.0, edge_sum = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      degree_sum += g.weighted_degree(v);
      for (const Neighbor& nb : g.neighbors(v)) {
        EXPECT_NE(nb.node, v);
        EXPECT_DOUBLE_EQ(g.edge_weight(nb.node, v), nb.weight);
      }
    }
    for (const Edge& e : g.edges()) edge_sum += e.weight;
    EXPECT_DOUBLE_EQ(degree_sum, 2.0 * edge_sum);
    EXPECT_DOUBLE_EQ(g.total_weight(), degree_sum);

    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    Graph copy = induced_subgraph(g, NodeSet(all));
    EXPECT_EQ(copy.external_ids(), g.external_ids());
    ASSERT_EQ(copy.num_edges(), g.num_edges());
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      EXPECT_EQ(copy.edges()[i].u, g.edges()[i].u);
      EXPECT_EQ(copy.edges()[i].v, g.edges()[i].v);
    }

    std::vector<int> covered(n, 0);
    for (const auto& comp : connected_components(g))
      for (NodeId v : comp) ++covered[v];
    for (int c : covered) EXPECT_EQ(c, 1);
  }
}

}  // namespace
}  // namespace contain
