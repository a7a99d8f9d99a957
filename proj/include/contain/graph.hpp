#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace contain {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Neighbor {
  NodeId node;
  double weight;
  EdgeId edge;
};

// Undirected edge with u < v.
struct Edge {
  NodeId u;
  NodeId v;
  double weight;
};

class Graph;

// Sorted, duplicate-free set of internal node ids.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::vector<NodeId> members);
  NodeSet(std::initializer_list<NodeId> members);

  const std::vector<NodeId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId v) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  // Throws DomainError if any member is >= g.num_nodes().
  void validate(const Graph& g) const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> members_;
};

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

// Immutable undirected weighted graph in CSR form.
//
// Internal ids are dense (0..n-1) and ordered by external id: numerically when every
// external id is a non-negative integer, lexicographically otherwise. "Smallest external
// id" tie-breaks throughout the library therefore reduce to "smallest internal id".
class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const noexcept { return external_ids_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(NodeId v) const { return weighted_degrees_[v]; }
  const std::vector<double>& weighted_degrees() const noexcept { return weighted_degrees_; }
  // Sum of weighted degrees, i.e. twice the total edge weight.
  double total_weight() const noexcept { return total_weight_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  // Weight of edge (u, v), 0 when absent.
  double edge_weight(NodeId u, NodeId v) const;

  const std::string& external_id(NodeId v) const { return external_ids_[v]; }
  const std::vector<std::string>& external_ids() const noexcept { return external_ids_; }
  // Throws DomainError for unknown ids.
  NodeId internal_id(std::string_view external) const;
  bool has_external_id(std::string_view external) const;

  void check_node(NodeId v) const;

  // Nodes must already be in canonical order; used by induced_subgraph and the builder.
  static Graph from_canonical(std::vector<std::string> external_ids, std::vector<Edge> edges);

 private:
  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> weighted_degrees_;
  double total_weight_ = 0.0;
};

// Accumulates edges keyed by external id and produces a canonical Graph.
class GraphBuilder {
 public:
  void add_node(std::string_view id);
  // Self-loops are counted and dropped; repeated or reversed pairs merge by summing weights.
  void add_edge(std::string_view u, std::string_view v, double weight = 1.0);

  std::size_t dropped_self_loops() const noexcept { return self_loops_; }

  Graph build() const;

 private:
  NodeId intern(std::string_view id);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> raw_edges_;
  std::size_t self_loops_ = 0;
};

// Graph over nodes "0".."n-1" from internal-index edges.
Graph make_graph(std::size_t n, std::span<const Edge> edges);
Graph make_graph(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges);

enum class EdgeListFormat { whitespace, csv };

struct LoadStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
};

Graph load_edge_list(const std::filesystem::path& path, EdgeListFormat format = EdgeListFormat::whitespace,
                     bool weighted = false, LoadStats* stats = nullptr);

// One external id per line; '#'/'%' comments and blank lines skipped.
NodeSet load_node_set(const std::filesystem::path& path, const Graph& g);

Graph induced_subgraph(const Graph& g, const NodeSet& nodes);
NodeSet neighborhood(const Graph& g, NodeId v);
// Components ordered by smallest member.
std::vector<NodeSet> connected_components(const Graph& g);

}  // namespace contain
