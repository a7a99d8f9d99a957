#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "contain/graph.hpp"

namespace contain {

struct EigenPair {
  double lambda = 0.0;
  std::vector<double> vector;  // unit 2-norm, entrywise non-negative
  std::size_t iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-9;
  std::size_t max_iterations = 1000;
};

// y = A x using adjacency lists only.
void adjacency_multiply(const Graph& g, std::span<const double> x, std::span<double> y);

// Dominant (Perron) eigenpair of the weighted adjacency operator by power iteration from
// the normalized all-ones vector. The estimate tracked is ||A x||, which converges even when
// a bipartite component makes the iterates alternate between two vectors; the returned
// vector is x + A x / lambda, cancelling the -lambda component.
//
// Throws DomainError on an edgeless graph and ConvergenceError (carrying the last iterate)
// when successive estimates still differ by more than tolerance * max(1, lambda).
EigenPair dominant_eigenpair(const Graph& g, const PowerIterationOptions& options = {});

}  // namespace contain
