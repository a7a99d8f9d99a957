#include "contain/generators.hpp"

#include <random>
#include <unordered_set>
#include <vector>

#include "contain/errors.hpp"

namespace contain {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

template <typename PickPair>
Graph sample_edges(std::size_t n, std::size_t m, std::uint64_t seed, PickPair pick) {
  if (n < 2 && m > 0) throw DomainError("cannot place edges on fewer than two nodes");
  if (m > n * (n - 1) / 2) throw DomainError("more edges requested than a simple graph allows");
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    auto [u, v] = pick(rng);
    if (u == v || !seen.insert(edge_key(u, v)).second) continue;
    edges.push_back({std::min(u, v), std::max(u, v), 1.0});
  }
  return make_graph(n, edges);
}

}  // namespace

Graph gnm_random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::uniform_int_distribution<NodeId> node(0, n == 0 ? 0 : static_cast<NodeId>(n - 1));
  return sample_edges(n, m, seed, [&](std::mt19937_64& rng) { return std::pair{node(rng), node(rng)}; });
}

Graph planted_partition_graph(std::size_t n, std::size_t m, std::size_t groups, double mixing, std::uint64_t seed) {
  if (groups == 0 || groups > n) throw DomainError("group count must lie in [1, n]");
  if (!(mixing >= 0.0 && mixing <= 1.0)) throw DomainError("mixing must lie in [0, 1]");
  const std::size_t block = n / groups;
  if (block < 2) throw DomainError("blocks need at least two nodes");
  const double intra_capacity = static_cast<double>(groups) * static_cast<double>(block * (block - 1) / 2);
  if (static_cast<double>(m) * (1.0 - mixing) > 0.9 * intra_capacity) {
    throw DomainError("blocks too small for the requested intra-block edge count");
  }
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  return sample_edges(n, m, seed, [&](std::mt19937_64& rng) {
    const NodeId u = node(rng);
    if (coin(rng) < mixing) return std::pair{u, node(rng)};
    // The last block absorbs the remainder of n / groups.
    const std::size_t g = std::min<std::size_t>(u / block, groups - 1);
    const std::size_t lo = g * block;
    const std::size_t hi = (g + 1 == groups) ? n - 1 : lo + block - 1;
    std::uniform_int_distribution<NodeId> inside(static_cast<NodeId>(lo), static_cast<NodeId>(hi));
    return std::pair{u, inside(rng)};
  });
}

}  // namespace contain
