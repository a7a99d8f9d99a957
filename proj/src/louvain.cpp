#include "contain/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "contain/errors.hpp"

namespace contain {

namespace {

constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);

// Dense relabelling in order of first appearance.
std::vector<std::uint32_t> compact_labels(std::span<const std::uint32_t> labels, std::size_t& count) {
  std::uint32_t max_label = 0;
  for (auto l : labels) max_label = std::max(max_label, l);
  std::vector<std::uint32_t> remap(labels.empty() ? 0 : std::size_t{max_label} + 1, kUnset);
  std::vector<std::uint32_t> out(labels.size());
  count = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& slot = remap[labels[i]];
    if (slot == kUnset) slot = static_cast<std::uint32_t>(count++);
    out[i] = slot;
  }
  return out;
}

}  // namespace

Partition Partition::from_assignment(const Graph& g, std::span<const std::uint32_t> labels) {
  if (labels.size() != g.num_nodes()) {
    throw DomainError("partition covers " + std::to_string(labels.size()) + " nodes, graph has " +
                      std::to_string(g.num_nodes()));
  }
  Partition p;
  std::size_t count = 0;
  // Scanning nodes in ascending order makes community ids follow their smallest member.
  p.assignment = compact_labels(labels, count);
  p.community_nodes.resize(count);
  p.sigma_tot.assign(count, 0.0);
  p.internal_weight.assign(count, 0.0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    p.community_nodes[p.assignment[v]].push_back(v);
    p.sigma_tot[p.assignment[v]] += g.weighted_degree(v);
  }
  for (const Edge& e : g.edges()) {
    if (p.assignment[e.u] == p.assignment[e.v]) p.internal_weight[p.assignment[e.u]] += e.weight;
  }
  return p;
}

Partition Partition::singletons(const Graph& g) {
  std::vector<std::uint32_t> labels(g.num_nodes());
  std::iota(labels.begin(), labels.end(), 0U);
  return from_assignment(g, labels);
}

Partition Partition::whole(const Graph& g) {
  std::vector<std::uint32_t> labels(g.num_nodes(), 0U);
  return from_assignment(g, labels);
}

void Resolution::validate() const {
  if (!(gamma > 0.0)) throw DomainError("resolution must be positive");
  if (!(delta_gamma > 0.0)) throw DomainError("resolution step must be positive");
}

double modularity(const Graph& g, const Partition& p, double gamma) {
  if (g.num_edges() == 0 || !(g.total_weight() > 0.0)) {
    throw DomainError("modularity undefined on a graph without edge weight");
  }
  if (p.assignment.size() != g.num_nodes()) throw DomainError("partition does not match graph");
  const double m = g.total_weight() / 2.0;
  double q = 0.0;
  for (std::size_t c = 0; c < p.num_communities(); ++c) {
    const double share = p.sigma_tot[c] / (2.0 * m);
    q += p.internal_weight[c] / m - gamma * share * share;
  }
  return q;
}

double delta_q(const MoveAggregates& a, double gamma) {
  return a.k_v_in / (2.0 * a.m) - gamma * a.sigma_tot * a.k_v / (2.0 * a.m * a.m);
}

double move_gain(const MoveAggregates& a, double gamma) {
  MoveAggregates both_arcs = a;
  both_arcs.k_v_in = 2.0 * a.k_v_in;
  return delta_q(both_arcs, gamma);
}

CommunityGraph CommunityGraph::from_graph(const Graph& g) {
  CommunityGraph cg;
  const std::size_t n = g.num_nodes();
  cg.offsets_.resize(n + 1);
  cg.arcs_.reserve(2 * g.num_edges());
  cg.offsets_[0] = 0;
  for (NodeId v = 0; v < n; ++v) {
    for (const Neighbor& nb : g.neighbors(v)) cg.arcs_.push_back({nb.node, nb.weight});
    cg.offsets_[v + 1] = cg.arcs_.size();
  }
  cg.self_loops_.assign(n, 0.0);
  cg.degrees_ = g.weighted_degrees();
  cg.min_member_.resize(n);
  std::iota(cg.min_member_.begin(), cg.min_member_.end(), NodeId{0});
  cg.total_weight_ = g.total_weight();
  return cg;
}

CommunityGraph CommunityGraph::aggregate(std::span<const std::uint32_t> labels, std::size_t num_labels) const {
  const std::size_t n = num_nodes();
  if (labels.size() != n) throw DomainError("label vector does not match community graph");

  std::vector<std::vector<NodeId>> members(num_labels);
  for (NodeId v = 0; v < n; ++v) members[labels[v]].push_back(v);

  CommunityGraph out;
  out.offsets_.assign(num_labels + 1, 0);
  out.self_loops_.assign(num_labels, 0.0);
  out.degrees_.assign(num_labels, 0.0);
  out.min_member_.assign(num_labels, kUnset);
  out.total_weight_ = total_weight_;

  std::vector<double> scratch(num_labels, 0.0);
  std::vector<char> touched_flag(num_labels, 0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t c = 0; c < num_labels; ++c) {
    for (NodeId v : members[c]) {
      out.self_loops_[c] += self_loops_[v];
      out.degrees_[c] += degrees_[v];
      out.min_member_[c] = std::min(out.min_member_[c], min_member_[v]);
      for (const Arc& a : arcs(v)) {
        const std::uint32_t d = labels[a.node];
        if (d == c) {
          // Each internal edge is seen from both ends.
          out.self_loops_[c] += a.weight / 2.0;
          continue;
        }
        if (!touched_flag[d]) {
          touched_flag[d] = 1;
          touched.push_back(d);
        }
        scratch[d] += a.weight;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t d : touched) {
      out.arcs_.push_back({d, scratch[d]});
      scratch[d] = 0.0;
      touched_flag[d] = 0;
    }
    touched.clear();
    out.offsets_[c + 1] = out.arcs_.size();
  }
  return out;
}

double modularity(const CommunityGraph& g, std::span<const std::uint32_t> labels, double gamma) {
  if (!(g.total_weight() > 0.0)) throw DomainError("modularity undefined on a graph without edge weight");
  const std::size_t n = g.num_nodes();
  if (labels.size() != n) throw DomainError("label vector does not match community graph");
  std::size_t count = 0;
  auto dense = compact_labels(labels, count);
  std::vector<double> internal(count, 0.0), tot(count, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    internal[dense[v]] += g.self_loop(v);
    tot[dense[v]] += g.degree(v);
    for (const auto& a : g.arcs(v)) {
      if (dense[a.node] == dense[v]) internal[dense[v]] += a.weight / 2.0;
    }
  }
  const double m = g.total_weight() / 2.0;
  double q = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    const double share = tot[c] / (2.0 * m);
    q += internal[c] / m - gamma * share * share;
  }
  return q;
}

double modularity(const CommunityGraph& g, double gamma) {
  std::vector<std::uint32_t> identity(g.num_nodes());
  std::iota(identity.begin(), identity.end(), 0U);
  return modularity(g, identity, gamma);
}

namespace {

// Local-move phase over one level. Communities are tracked with intrusive member lists
// so the smallest original member can be recovered for tie-breaks after departures.
class LocalMover {
 public:
  LocalMover(const CommunityGraph& graph, const LouvainOptions& options, std::size_t level)
      : graph_(graph),
        options_(options),
        level_(level),
        n_(graph.num_nodes()),
        labels_(n_),
        tot_(n_),
        min_id_(n_),
        dirty_(n_, 0),
        head_(n_),
        next_(n_, kUnset),
        prev_(n_, kUnset),
        weight_to_(n_, 0.0),
        seen_(n_, 0) {
    for (NodeId v = 0; v < n_; ++v) {
      labels_[v] = v;
      tot_[v] = graph.degree(v);
      min_id_[v] = graph.min_member(v);
      head_[v] = v;
    }
  }

  // Returns the number of accepted moves.
  std::size_t run() {
    const double m = graph_.total_weight() / 2.0;
    if (!(m > 0.0)) return 0;

    std::vector<NodeId> order(n_);
    std::iota(order.begin(), order.end(), NodeId{0});
    std::mt19937_64 rng(options_.rng_seed ^ (0x9e3779b97f4a7c15ULL * (level_ + 1)));
    std::shuffle(order.begin(), order.end(), rng);

    std::size_t total_moves = 0;
    for (std::size_t pass = 0; pass < options_.max_passes; ++pass) {
      std::size_t moves = 0;
      for (NodeId v : order) {
        if (try_move(v, m)) ++moves;
      }
      total_moves += moves;
      if (moves == 0) break;
    }
    return total_moves;
  }

  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

 private:
  bool try_move(NodeId v, double m) {
    const std::uint32_t current = labels_[v];
    const double k_v = graph_.degree(v);

    for (const auto& a : graph_.arcs(v)) {
      const std::uint32_t c = labels_[a.node];
      if (!seen_[c]) {
        seen_[c] = 1;
        touched_.push_back(c);
      }
      weight_to_[c] += a.weight;
    }

    const double stay_gain = move_gain({weight_to_[current], k_v, tot_[current] - k_v, m}, options_.gamma);
    std::uint32_t best = kUnset;
    double best_gain = 0.0;
    for (std::uint32_t c : touched_) {
      if (c == current) continue;
      const double gain = move_gain({weight_to_[c], k_v, tot_[c], m}, options_.gamma);
      if (best == kUnset || gain > best_gain + tie_slack(gain, best_gain)) {
        best = c;
        best_gain = gain;
      } else if (std::abs(gain - best_gain) <= tie_slack(gain, best_gain) && smallest(c) < smallest(best)) {
        best = c;
        best_gain = gain;
      }
    }

    for (std::uint32_t c : touched_) {
      weight_to_[c] = 0.0;
      seen_[c] = 0;
    }
    touched_.clear();

    if (best == kUnset || !(best_gain - stay_gain > options_.tolerance)) return false;

    detach(v, current);
    attach(v, best);
    if (options_.on_move) options_.on_move(MoveEvent{level_, graph_, labels_, best_gain - stay_gain});
    return true;
  }

  static double tie_slack(double a, double b) { return 1e-13 * (std::abs(a) + std::abs(b)); }

  NodeId smallest(std::uint32_t c) {
    if (dirty_[c]) {
      NodeId best = kUnset;
      for (NodeId u = head_[c]; u != kUnset; u = next_[u]) best = std::min(best, graph_.min_member(u));
      min_id_[c] = best;
      dirty_[c] = 0;
    }
    return min_id_[c];
  }

  void detach(NodeId v, std::uint32_t c) {
    tot_[c] -= graph_.degree(v);
    if (prev_[v] != kUnset) {
      next_[prev_[v]] = next_[v];
    } else {
      head_[c] = next_[v];
    }
    if (next_[v] != kUnset) prev_[next_[v]] = prev_[v];
    next_[v] = prev_[v] = kUnset;
    if (min_id_[c] == graph_.min_member(v)) dirty_[c] = 1;
  }

  void attach(NodeId v, std::uint32_t c) {
    tot_[c] += graph_.degree(v);
    labels_[v] = c;
    if (head_[c] == kUnset) {
      head_[c] = v;
      min_id_[c] = graph_.min_member(v);
      dirty_[c] = 0;
    } else {
      next_[v] = head_[c];
      prev_[head_[c]] = v;
      head_[c] = v;
      if (!dirty_[c]) min_id_[c] = std::min(min_id_[c], graph_.min_member(v));
    }
  }

  const CommunityGraph& graph_;
  const LouvainOptions& options_;
  std::size_t level_;
  std::size_t n_;
  std::vector<std::uint32_t> labels_;
  std::vector<double> tot_;
  std::vector<NodeId> min_id_;
  std::vector<char> dirty_;
  std::vector<NodeId> head_, next_, prev_;
  std::vector<double> weight_to_;
  std::vector<char> seen_;
  std::vector<std::uint32_t> touched_;
};

// Dense relabelling ordered by each community's smallest original member.
std::vector<std::uint32_t> relabel_by_min_member(const CommunityGraph& graph, std::span<const std::uint32_t> labels,
                                                 std::size_t& count) {
  const std::size_t n = labels.size();
  std::vector<NodeId> min_of(n, kUnset);
  for (NodeId v = 0; v < n; ++v) min_of[labels[v]] = std::min(min_of[labels[v]], graph.min_member(v));
  std::vector<std::uint32_t> used;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (min_of[c] != kUnset) used.push_back(c);
  }
  std::sort(used.begin(), used.end(), [&](std::uint32_t a, std::uint32_t b) { return min_of[a] < min_of[b]; });
  std::vector<std::uint32_t> remap(n, kUnset);
  for (std::uint32_t i = 0; i < used.size(); ++i) remap[used[i]] = i;
  count = used.size();
  std::vector<std::uint32_t> out(n);
  for (NodeId v = 0; v < n; ++v) out[v] = remap[labels[v]];
  return out;
}

}  // namespace

Partition louvain(const Graph& g, const LouvainOptions& options) {
  if (g.num_nodes() == 0) throw DomainError("louvain requires a non-empty graph");
  if (!(options.gamma > 0.0)) throw DomainError("resolution must be positive");

  std::vector<std::uint32_t> node_to_level(g.num_nodes());
  std::iota(node_to_level.begin(), node_to_level.end(), 0U);

  CommunityGraph level_graph = CommunityGraph::from_graph(g);
  for (std::size_t level = 0;; ++level) {
    LocalMover mover(level_graph, options, level);
    const std::size_t moves = mover.run();
    if (moves == 0) break;

    std::size_t count = 0;
    auto labels = relabel_by_min_member(level_graph, mover.labels(), count);
    for (auto& l : node_to_level) l = labels[l];
    if (count == level_graph.num_nodes()) break;
    level_graph = level_graph.aggregate(labels, count);
  }
  return Partition::from_assignment(g, node_to_level);
}

Partition louvain(const Graph& g, double gamma, std::uint64_t rng_seed) {
  LouvainOptions options;
  options.gamma = gamma;
  options.rng_seed = rng_seed;
  return louvain(g, options);
}

}  // namespace contain
