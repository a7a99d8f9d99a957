#include "contain/structural.hpp"

#include <algorithm>
#include <limits>

#include "contain/errors.hpp"

namespace contain {

TieProportions::TieProportions(const Graph& g) : graph_(&g) {
  const std::size_t n = g.num_nodes();
  offsets_.resize(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + g.degree(v);
  values_.resize(offsets_[n], 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const double strength = g.weighted_degree(v);
    if (!(strength > 0.0)) continue;
    auto row = g.neighbors(v);
    for (std::size_t i = 0; i < row.size(); ++i) values_[offsets_[v] + i] = row[i].weight / strength;
  }
}

double TieProportions::operator()(NodeId from, NodeId to) const {
  graph_->check_node(from);
  graph_->check_node(to);
  auto nbrs = graph_->neighbors(from);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), to,
                             [](const Neighbor& nb, NodeId target) { return nb.node < target; });
  if (it == nbrs.end() || it->node != to) return 0.0;
  return values_[offsets_[from] + static_cast<std::size_t>(it - nbrs.begin())];
}

ConstraintCalculator::ConstraintCalculator(const Graph& g, ConstraintMode mode)
    : graph_(g), mode_(mode), p_(g), share_(g.num_nodes(), 0.0) {}

double ConstraintCalculator::operator()(NodeId v) {
  graph_.check_node(v);
  if (!(graph_.weighted_degree(v) > 0.0)) {
    throw DomainError("constraint undefined for isolated node " + graph_.external_id(v));
  }
  auto nbrs = graph_.neighbors(v);
  auto pv = p_.row(v);
  double total = 0.0;

  if (mode_ == ConstraintMode::indirect_investment) {
    for (std::size_t i = 0; i < nbrs.size(); ++i) share_[nbrs[i].node] = pv[i];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId u = nbrs[i].node;
      double indirect = 0.0;
      // p(v,w) is nonzero only for w in N(v), so the scan visits common neighbours.
      for (const Neighbor& nb : graph_.neighbors(u)) {
        const NodeId w = nb.node;
        if (w == v || share_[w] == 0.0) continue;
        indirect += share_[w] * (nb.weight / graph_.weighted_degree(w));
      }
      const double term = pv[i] + indirect;
      total += term * term;
    }
    for (const Neighbor& nb : nbrs) share_[nb.node] = 0.0;
    return total;
  }

  for (const Neighbor& nb_u : nbrs) {
    const NodeId u = nb_u.node;
    const double p_uv = nb_u.weight / graph_.weighted_degree(u);
    double inner = 0.0;
    for (const Neighbor& nb_w : graph_.neighbors(u)) {
      const NodeId w = nb_w.node;
      if (w == v) continue;  // p(v,v) = 0
      inner += p_uv * p_(w, v);
    }
    const double term = p_uv + inner;
    total += term * term;
  }
  return total;
}

double node_constraint(const Graph& g, NodeId v, ConstraintMode mode) {
  ConstraintCalculator calc(g, mode);
  return calc(v);
}

ConstraintProfile component_constraint_profile(const Graph& g, const NodeSet& component, ConstraintMode mode) {
  if (component.empty()) throw DomainError("constraint profile of an empty component");
  component.validate(g);
  ConstraintCalculator calc(g, mode);
  ConstraintProfile profile{std::numeric_limits<double>::infinity(), 0.0, -std::numeric_limits<double>::infinity()};
  for (NodeId v : component) {
    const double c = calc(v);
    profile.min = std::min(profile.min, c);
    profile.max = std::max(profile.max, c);
    profile.mean += c;
  }
  profile.mean /= static_cast<double>(component.size());
  return profile;
}

}  // namespace contain
