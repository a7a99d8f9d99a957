#pragma once

#include <cstddef>
#include <queue>
#include <string_view>
#include <vector>

#include "contain/graph.hpp"
#include "contain/spectral.hpp"

namespace contain {

enum class ShieldAlgorithm { netshield, sparseshield };

std::string_view to_string(ShieldAlgorithm algorithm);
ShieldAlgorithm parse_shield_algorithm(std::string_view name);

struct ShieldSelection {
  std::vector<NodeId> picked;  // greedy order
  std::vector<double> scores;  // score of each pick when it was taken
  double lambda = 0.0;
  bool clamped = false;  // requested budget exceeded n
};

// Greedy eigen-drop selection that can be advanced one pick at a time.
//
// Marginal score of an unpicked node i given the picked set S:
//   2 lambda u_i^2 - alpha * 2 u_i * sum_{j in S} w_ij u_j
// NetShield uses alpha = 1 and rescans every candidate per pick; SparseShield keeps a
// max-priority queue keyed on stale scores and re-scores lazily on extraction. Scores
// only decrease as S grows, so both produce the exact greedy order. Ties go to the
// smaller id.
class ShieldGreedy {
 public:
  ShieldGreedy(const Graph& g, ShieldAlgorithm algorithm, double alpha, EigenPair eigen);

  bool exhausted() const noexcept { return selection_.picked.size() == graph_.num_nodes(); }
  NodeId next();
  const ShieldSelection& selection() const noexcept { return selection_; }
  ShieldSelection release() && { return std::move(selection_); }

 private:
  struct QueueItem {
    double score;
    NodeId node;
  };
  struct QueueOrder {
    bool operator()(const QueueItem& a, const QueueItem& b) const;
  };

  double score(NodeId i) const;
  NodeId next_by_scan();
  NodeId next_by_queue();
  void take(NodeId v, double score);

  const Graph& graph_;
  ShieldAlgorithm algorithm_;
  double alpha_;
  EigenPair eigen_;
  std::vector<double> penalty_;  // sum of w_ij u_j over picked neighbours j
  std::vector<char> picked_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, QueueOrder> queue_;
  ShieldSelection selection_;
};

// Throws DomainError for an edgeless graph; a budget above n is clamped.
ShieldSelection netshield(const Graph& g, std::size_t budget);
ShieldSelection sparseshield(const Graph& g, std::size_t budget, double alpha = 1.0);
ShieldSelection shield(const Graph& g, ShieldAlgorithm algorithm, std::size_t budget, double alpha = 1.0);

struct BudgetSearchResult {
  std::size_t budget = 0;
  ShieldSelection selection;
};

// Grows the greedy selection until every seed is picked. Seeds are not forced in.
BudgetSearchResult budget_search(const Graph& g, const NodeSet& seeds, ShieldAlgorithm algorithm, double alpha = 1.0);

}  // namespace contain
