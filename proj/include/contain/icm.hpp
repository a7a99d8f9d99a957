#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "contain/graph.hpp"

namespace contain {

struct CascadeConfig {
  double p = 0.1;
  // Use each edge weight (clamped to [0, 1]) as its activation probability instead of p.
  bool weights_as_probabilities = false;
  std::size_t trials = 1000;
  std::uint64_t rng_seed = 42;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 1;

  void validate() const;
};

struct SpreadEstimate {
  double mean_infected = 0.0;
  double std_infected = 0.0;  // sample standard deviation over trials
  std::size_t trials = 0;
  double saved = 0.0;
};

// Uniform in [0, 1) for one edge attempt, a pure function of (seed, trial, edge). Runs that
// differ only in the immunized set or in p therefore see the same coin flips.
double edge_coin(std::uint64_t rng_seed, std::size_t trial, EdgeId edge);

// Final active-set size of one Independent Cascade trial. Immunized nodes are removed
// before the cascade starts, including immunized seeds.
std::size_t simulate_trial(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg,
                           std::size_t trial);

SpreadEstimate simulate(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg);

// mean(no immunization) - mean(with immunization) under common random numbers.
double saved_nodes(const Graph& g, const NodeSet& seeds, const NodeSet& immunized, const CascadeConfig& cfg);

}  // namespace contain
