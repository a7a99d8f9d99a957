#include "contain/baselines.hpp"

#include <cassert>
#include <cmath>

#include "contain/errors.hpp"

namespace contain {

namespace {

bool nearly_equal(double a, double b) { return std::abs(a - b) <= 1e-12 * (std::abs(a) + std::abs(b)) + 1e-300; }

}  // namespace

std::string_view to_string(ShieldAlgorithm algorithm) {
  return algorithm == ShieldAlgorithm::netshield ? "netshield" : "sparseshield";
}

ShieldAlgorithm parse_shield_algorithm(std::string_view name) {
  if (name == "netshield") return ShieldAlgorithm::netshield;
  if (name == "sparseshield") return ShieldAlgorithm::sparseshield;
  throw DomainError("unknown shield algorithm '" + std::string(name) + "'");
}

bool ShieldGreedy::QueueOrder::operator()(const QueueItem& a, const QueueItem& b) const {
  // std::priority_queue pops the "largest": higher score, then smaller id.
  if (!nearly_equal(a.score, b.score)) return a.score < b.score;
  return a.node > b.node;
}

ShieldGreedy::ShieldGreedy(const Graph& g, ShieldAlgorithm algorithm, double alpha, EigenPair eigen)
    : graph_(g),
      algorithm_(algorithm),
      alpha_(algorithm == ShieldAlgorithm::netshield ? 1.0 : alpha),
      eigen_(std::move(eigen)),
      penalty_(g.num_nodes(), 0.0),
      picked_(g.num_nodes(), 0) {
  if (!(alpha_ >= 0.0)) throw DomainError("priority multiplier alpha must be non-negative");
  selection_.lambda = eigen_.lambda;
  if (algorithm_ == ShieldAlgorithm::sparseshield) {
    std::vector<QueueItem> items;
    items.reserve(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) items.push_back({score(v), v});
    queue_ = decltype(queue_)(QueueOrder{}, std::move(items));
  }
}

double ShieldGreedy::score(NodeId i) const {
  const double u = eigen_.vector[i];
  return 2.0 * eigen_.lambda * u * u - alpha_ * 2.0 * u * penalty_[i];
}

NodeId ShieldGreedy::next() {
  if (exhausted()) throw DomainError("every node has already been picked");
  return algorithm_ == ShieldAlgorithm::netshield ? next_by_scan() : next_by_queue();
}

NodeId ShieldGreedy::next_by_scan() {
  NodeId best = static_cast<NodeId>(-1);
  double best_score = 0.0;
  for (NodeId v = 0; v < graph_.num_nodes(); ++v) {
    if (picked_[v]) continue;
    const double s = score(v);
    if (best == static_cast<NodeId>(-1) || (s > best_score && !nearly_equal(s, best_score))) {
      best = v;
      best_score = s;
    }
  }
  take(best, best_score);
  return best;
}

NodeId ShieldGreedy::next_by_queue() {
  while (true) {
    assert(!queue_.empty());
    QueueItem top = queue_.top();
    queue_.pop();
    const double fresh = score(top.node);
    // Stored scores are upper bounds, so a fresh score that still beats the next stored
    // one is the true maximum.
    if (queue_.empty() || !QueueOrder{}(QueueItem{fresh, top.node}, queue_.top())) {
      take(top.node, fresh);
      return top.node;
    }
    queue_.push({fresh, top.node});
  }
}

void ShieldGreedy::take(NodeId v, double score) {
  picked_[v] = 1;
  selection_.picked.push_back(v);
  selection_.scores.push_back(score);
  const double u = eigen_.vector[v];
  for (const Neighbor& nb : graph_.neighbors(v)) penalty_[nb.node] += nb.weight * u;
}

ShieldSelection shield(const Graph& g, ShieldAlgorithm algorithm, std::size_t budget, double alpha) {
  if (algorithm == ShieldAlgorithm::sparseshield && !(alpha >= 0.0)) {
    throw DomainError("priority multiplier alpha must be non-negative");
  }
  ShieldGreedy greedy(g, algorithm, alpha, dominant_eigenpair(g));
  const bool clamped = budget > g.num_nodes();
  const std::size_t target = clamped ? g.num_nodes() : budget;
  while (greedy.selection().picked.size() < target) greedy.next();
  ShieldSelection out = std::move(greedy).release();
  out.clamped = clamped;
  return out;
}

ShieldSelection netshield(const Graph& g, std::size_t budget) {
  return shield(g, ShieldAlgorithm::netshield, budget, 1.0);
}

ShieldSelection sparseshield(const Graph& g, std::size_t budget, double alpha) {
  return shield(g, ShieldAlgorithm::sparseshield, budget, alpha);
}

BudgetSearchResult budget_search(const Graph& g, const NodeSet& seeds, ShieldAlgorithm algorithm, double alpha) {
  if (seeds.empty()) throw DomainError("budget search needs at least one seed");
  seeds.validate(g);
  ShieldGreedy greedy(g, algorithm, alpha, dominant_eigenpair(g));
  std::vector<char> is_seed(g.num_nodes(), 0);
  for (NodeId s : seeds) is_seed[s] = 1;
  std::size_t remaining = seeds.size();
  while (remaining > 0) {
    // The greedy eventually takes every node, so coverage is reached by budget n at worst.
    assert(!greedy.exhausted());
    if (is_seed[greedy.next()]) --remaining;
  }
  BudgetSearchResult result;
  result.selection = std::move(greedy).release();
  result.budget = result.selection.picked.size();
  return result;
}

}  // namespace contain
