#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "contain/graph.hpp"

namespace contain {

using CommunityId = std::uint32_t;

// Every node belongs to exactly one community; ids are dense and ordered by smallest member.
struct Partition {
  std::vector<CommunityId> assignment;
  std::vector<std::vector<NodeId>> community_nodes;
  std::vector<double> sigma_tot;        // sum of member weighted degrees
  std::vector<double> internal_weight;  // sum of weights of edges with both ends inside

  std::size_t num_communities() const noexcept { return community_nodes.size(); }

  // Arbitrary labels are relabelled densely; throws DomainError on a size mismatch.
  static Partition from_assignment(const Graph& g, std::span<const std::uint32_t> labels);
  static Partition singletons(const Graph& g);
  static Partition whole(const Graph& g);
};

// Resolution schedule for a sweep: gamma, gamma + delta, gamma + 2 delta, ...
struct Resolution {
  double gamma = 1.0;
  double delta_gamma = 0.1;

  void validate() const;
  double at(std::size_t step) const { return gamma + static_cast<double>(step) * delta_gamma; }
};

// Q = sum_c [ L_c / m - gamma (Sigma_tot,c / 2m)^2 ]. Throws DomainError on an edgeless graph.
double modularity(const Graph& g, const Partition& p, double gamma = 1.0);

// Aggregates seen by a node v considered for insertion into community C.
struct MoveAggregates {
  double k_v_in = 0.0;     // weight from v into C
  double k_v = 0.0;        // weighted degree of v
  double sigma_tot = 0.0;  // Sigma_tot of C with v removed
  double m = 0.0;          // total edge weight
};

// k_v_in / 2m - gamma * Sigma_tot * k_v / (2 m^2)
double delta_q(const MoveAggregates& a, double gamma);

// Exact change of modularity() when an isolated v joins C. This is delta_q with k_v_in
// counted over both arc directions of the symmetric adjacency.
double move_gain(const MoveAggregates& a, double gamma);

// Weighted quotient graph used between Louvain levels. Unlike Graph it carries self-loops
// (the internal weight of the merged community).
class CommunityGraph {
 public:
  struct Arc {
    NodeId node;
    double weight;
  };

  static CommunityGraph from_graph(const Graph& g);
  // Collapse nodes sharing a label; labels must be dense in [0, num_labels).
  CommunityGraph aggregate(std::span<const std::uint32_t> labels, std::size_t num_labels) const;

  std::size_t num_nodes() const noexcept { return self_loops_.size(); }
  std::span<const Arc> arcs(NodeId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  double self_loop(NodeId v) const { return self_loops_[v]; }
  double degree(NodeId v) const { return degrees_[v]; }
  double total_weight() const noexcept { return total_weight_; }
  // Smallest original node folded into v.
  NodeId min_member(NodeId v) const { return min_member_[v]; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::vector<double> self_loops_;
  std::vector<double> degrees_;
  std::vector<NodeId> min_member_;
  double total_weight_ = 0.0;
};

// Modularity of a labelling of a community graph; identity labels give the level's own Q.
double modularity(const CommunityGraph& g, std::span<const std::uint32_t> labels, double gamma);
double modularity(const CommunityGraph& g, double gamma);

struct MoveEvent {
  std::size_t level;
  const CommunityGraph& graph;
  std::span<const std::uint32_t> labels;
  double gain;
};

struct LouvainOptions {
  double gamma = 1.0;
  std::uint64_t rng_seed = 42;
  double tolerance = 1e-12;
  std::size_t max_passes = 100;
  // Invoked after every accepted move; labels are the current level's community labels.
  std::function<void(const MoveEvent&)> on_move;
};

Partition louvain(const Graph& g, const LouvainOptions& options);
Partition louvain(const Graph& g, double gamma, std::uint64_t rng_seed = 42);

}  // namespace contain
