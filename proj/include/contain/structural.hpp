#pragma once

#include <span>
#include <vector>

#include "contain/graph.hpp"

namespace contain {

// p(v, u) = w(v, u) / strength(v): the share of v's tie strength invested in u.
class TieProportions {
 public:
  explicit TieProportions(const Graph& g);
  explicit TieProportions(Graph&&) = delete;

  double operator()(NodeId from, NodeId to) const;
  // Proportions aligned with g.neighbors(v).
  std::span<const double> row(NodeId v) const {
    return {values_.data() + offsets_[v], values_.data() + offsets_[v + 1]};
  }

 private:
  const Graph* graph_;
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

enum class ConstraintMode {
  // (p(v,u) + sum_{w in N(u), w != v} p(v,w) p(w,u))^2 summed over u in N(v)
  indirect_investment,
  // (p(u,v) + sum_{w in N(u)} p(u,v) p(w,v))^2, the subscripts taken literally
  as_typeset,
};

// Reuses an O(n) scratch row across calls; not thread-safe, one per thread.
class ConstraintCalculator {
 public:
  explicit ConstraintCalculator(const Graph& g, ConstraintMode mode = ConstraintMode::indirect_investment);
  ConstraintCalculator(Graph&&, ConstraintMode = ConstraintMode::indirect_investment) = delete;

  // Throws DomainError when v has no tie strength.
  double operator()(NodeId v);

 private:
  const Graph& graph_;
  ConstraintMode mode_;
  TieProportions p_;
  std::vector<double> share_;
};

double node_constraint(const Graph& g, NodeId v, ConstraintMode mode = ConstraintMode::indirect_investment);

struct ConstraintProfile {
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

ConstraintProfile component_constraint_profile(const Graph& g, const NodeSet& component,
                                               ConstraintMode mode = ConstraintMode::indirect_investment);

}  // namespace contain
