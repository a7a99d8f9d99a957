#pragma once

// Independent reference implementations used only by the tests. Nothing here calls into
// the code paths it is used to check.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "contain/graph.hpp"

namespace contain::oracle {

// Two triangles {0,1,2}, {3,4,5} joined by the bridge 2-3.
Graph two_cliques_bridge();
Graph star(std::size_t leaves);  // center 0
Graph complete(std::size_t n);
Graph path(std::size_t n);
Graph cycle(std::size_t n);

// Random connected graphs on 1..max_nodes nodes plus the named families above.
std::vector<Graph> connected_catalog(std::size_t max_nodes, std::size_t random_count, std::uint64_t seed);
// Random graphs (possibly disconnected, possibly with isolated nodes).
Graph random_graph(std::size_t n, double density, std::uint64_t seed);

Eigen::MatrixXd dense_adjacency(const Graph& g);

// Pairwise form: (1/2m) sum_{u,v} [A_uv - gamma k_u k_v / 2m] [c_u == c_v].
double pairwise_modularity(const Graph& g, const std::vector<std::uint32_t>& labels, double gamma);

struct BestPartition {
  double modularity;
  std::vector<std::uint32_t> labels;
};
// Enumerates every set partition (restricted growth strings). Feasible up to ~10 nodes.
BestPartition best_partition(const Graph& g, double gamma);

// Largest eigenvalue of the dense adjacency matrix.
double dense_lambda(const Graph& g);
Eigen::VectorXd dense_perron_vector(const Graph& g);
// Largest eigenvalue after deleting node v (0 for an edgeless remainder).
double dense_lambda_without(const Graph& g, NodeId v);

// Burt constraint evaluated on a dense proportion matrix.
double dense_constraint(const Graph& g, NodeId v);

// Nodes reachable from `sources` while avoiding `removed` (sources inside `removed` excluded).
std::size_t reachable_count(const Graph& g, const NodeSet& sources, const NodeSet& removed);

}  // namespace contain::oracle
