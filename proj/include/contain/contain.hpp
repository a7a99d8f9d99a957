#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "contain/graph.hpp"
#include "contain/louvain.hpp"
#include "contain/structural.hpp"

namespace contain {

struct ComponentInfo {
  NodeSet nodes;  // ids of the original graph
  // Absent for a seed with no neighbours, whose constraint is undefined.
  std::optional<ConstraintProfile> constraint;
};

// G' = subgraph induced by the union of the seeds' closed neighbourhoods.
struct ComposedSubgraph {
  NodeSet nodes;
  Graph graph;
  // Ascending mean constraint (most brokerage first); undefined profiles last.
  std::vector<ComponentInfo> components;
};

ComposedSubgraph compose_seed_subgraph(const Graph& g, const NodeSet& seeds,
                                       ConstraintMode mode = ConstraintMode::indirect_investment);

struct RankedEntry {
  CommunityId community = 0;
  NodeSet members;
  std::size_t harmful = 0;  // n_h: seeds inside the community
  std::size_t size = 0;     // n_C
  double score = 0.0;       // n_h / n_C
};

struct RankedCommunities {
  std::vector<RankedEntry> entries;
  double gamma_final = 0.0;
  std::size_t iterations = 0;
  std::size_t num_communities = 0;  // communities in the whole partition
};

// All communities of p that share at least one node with `composed`, ordered by score
// descending, then larger size, then smaller smallest member.
std::vector<RankedEntry> rank_communities(const Partition& p, const NodeSet& composed, const NodeSet& seeds);

struct ContainOptions {
  std::size_t k = 10;
  double gamma0 = 0.5;
  double delta_gamma = 0.1;
  double gamma_max = 64.0;
  std::uint64_t rng_seed = 42;

  void validate() const;
  // Upper bound on Louvain invocations: floor((gamma_max - gamma0) / delta_gamma) + 1.
  std::size_t max_iterations() const;
};

// Raises gamma from gamma0 in delta_gamma steps until at least k communities intersect G'.
// Throws DomainError if k exceeds |G'| and ConvergenceError once gamma passes gamma_max.
RankedCommunities contain(const Graph& g, const NodeSet& seeds, const ContainOptions& options);
RankedCommunities contain(const Graph& g, const ComposedSubgraph& composed, const NodeSet& seeds,
                          const ContainOptions& options);

// Union of the top-k entries.
NodeSet immunized_node_set(const RankedCommunities& ranked, std::size_t k);

}  // namespace contain
