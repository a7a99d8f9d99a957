#include "contain/contain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "contain/errors.hpp"

namespace contain {

ComposedSubgraph compose_seed_subgraph(const Graph& g, const NodeSet& seeds, ConstraintMode mode) {
  if (seeds.empty()) throw DomainError("no spreaders: seed set is empty");
  seeds.validate(g);

  std::vector<NodeId> members;
  for (NodeId s : seeds) {
    members.push_back(s);
    for (const Neighbor& nb : g.neighbors(s)) members.push_back(nb.node);
  }

  ComposedSubgraph out;
  out.nodes = NodeSet(std::move(members));
  out.graph = induced_subgraph(g, out.nodes);

  const auto& to_original = out.nodes.members();
  ConstraintCalculator calc(out.graph, mode);
  for (const NodeSet& local : connected_components(out.graph)) {
    ComponentInfo info;
    std::vector<NodeId> original;
    original.reserve(local.size());
    for (NodeId v : local) original.push_back(to_original[v]);
    info.nodes = NodeSet(std::move(original));
    const bool defined = std::all_of(local.begin(), local.end(),
                                     [&](NodeId v) { return out.graph.weighted_degree(v) > 0.0; });
    if (defined) {
      ConstraintProfile profile{1e300, 0.0, -1e300};
      for (NodeId v : local) {
        const double c = calc(v);
        profile.min = std::min(profile.min, c);
        profile.max = std::max(profile.max, c);
        profile.mean += c;
      }
      profile.mean /= static_cast<double>(local.size());
      info.constraint = profile;
    }
    out.components.push_back(std::move(info));
  }
  std::stable_sort(out.components.begin(), out.components.end(), [](const ComponentInfo& a, const ComponentInfo& b) {
    if (a.constraint.has_value() != b.constraint.has_value()) return a.constraint.has_value();
    if (a.constraint && a.constraint->mean != b.constraint->mean) return a.constraint->mean < b.constraint->mean;
    return a.nodes.members().front() < b.nodes.members().front();
  });
  return out;
}

std::vector<RankedEntry> rank_communities(const Partition& p, const NodeSet& composed, const NodeSet& seeds) {
  std::vector<char> intersects(p.num_communities(), 0);
  for (NodeId v : composed) intersects[p.assignment.at(v)] = 1;
  std::vector<std::size_t> harmful(p.num_communities(), 0);
  for (NodeId s : seeds) ++harmful[p.assignment.at(s)];

  std::vector<RankedEntry> entries;
  for (CommunityId c = 0; c < p.num_communities(); ++c) {
    if (!intersects[c]) continue;
    RankedEntry e;
    e.community = c;
    e.members = NodeSet(p.community_nodes[c]);
    e.harmful = harmful[c];
    e.size = p.community_nodes[c].size();
    e.score = static_cast<double>(e.harmful) / static_cast<double>(e.size);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    // Exact ratio comparison: a.h / a.n vs b.h / b.n.
    const auto lhs = a.harmful * b.size;
    const auto rhs = b.harmful * a.size;
    if (lhs != rhs) return lhs > rhs;
    if (a.size != b.size) return a.size > b.size;
    return a.members.members().front() < b.members.members().front();
  });
  return entries;
}

void ContainOptions::validate() const {
  if (k < 1) throw DomainError("budget k must be at least 1");
  if (!(gamma0 > 0.0)) throw DomainError("initial resolution must be positive");
  if (!(delta_gamma > 0.0)) throw DomainError("resolution step must be positive");
  if (!(gamma_max >= gamma0)) throw DomainError("gamma_max must be at least gamma0");
}

std::size_t ContainOptions::max_iterations() const {
  return static_cast<std::size_t>(std::floor((gamma_max - gamma0) / delta_gamma + 1e-9)) + 1;
}

RankedCommunities contain(const Graph& g, const NodeSet& seeds, const ContainOptions& options) {
  options.validate();
  return contain(g, compose_seed_subgraph(g, seeds), seeds, options);
}

RankedCommunities contain(const Graph& g, const ComposedSubgraph& composed, const NodeSet& seeds,
                          const ContainOptions& options) {
  options.validate();
  if (seeds.empty()) throw DomainError("no spreaders: seed set is empty");
  seeds.validate(g);
  if (options.k > composed.nodes.size()) {
    throw DomainError("budget unreachable: k=" + std::to_string(options.k) + " exceeds the " +
                      std::to_string(composed.nodes.size()) + " nodes of the composed subgraph");
  }

  const std::size_t limit = options.max_iterations();
  std::size_t last_count = 0;
  for (std::size_t step = 0; step < limit; ++step) {
    const double gamma = options.gamma0 + static_cast<double>(step) * options.delta_gamma;
    Partition partition = louvain(g, gamma, options.rng_seed);
    auto entries = rank_communities(partition, composed.nodes, seeds);
    last_count = entries.size();
    if (entries.size() >= options.k) {
      RankedCommunities result;
      result.entries = std::move(entries);
      result.gamma_final = gamma;
      result.iterations = step + 1;
      result.num_communities = partition.num_communities();
      return result;
    }
  }
  const double last_gamma = options.gamma0 + static_cast<double>(limit - 1) * options.delta_gamma;
  std::ostringstream msg;
  msg << "budget k=" << options.k << " not met before gamma_max=" << options.gamma_max << " (last gamma "
      << last_gamma << " gave " << last_count << " intersecting communities after " << limit << " iterations)";
  throw ConvergenceError(msg.str(), last_gamma);
}

NodeSet immunized_node_set(const RankedCommunities& ranked, std::size_t k) {
  if (k > ranked.entries.size()) {
    throw DomainError("requested top-" + std::to_string(k) + " of only " + std::to_string(ranked.entries.size()) +
                      " ranked communities");
  }
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& m = ranked.entries[i].members.members();
    out.insert(out.end(), m.begin(), m.end());
  }
  return NodeSet(std::move(out));
}

}  // namespace contain
