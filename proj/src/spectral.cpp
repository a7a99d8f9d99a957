#include "contain/spectral.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "contain/errors.hpp"

namespace contain {

namespace {

double norm2(std::span<const double> x) { return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)); }

}  // namespace

void adjacency_multiply(const Graph& g, std::span<const double> x, std::span<double> y) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    double acc = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) acc += nb.weight * x[nb.node];
    y[v] = acc;
  }
}

EigenPair dominant_eigenpair(const Graph& g, const PowerIterationOptions& options) {
  if (g.num_edges() == 0 || !(g.total_weight() > 0.0)) {
    throw DomainError("dominant eigenpair requested for an edgeless graph");
  }
  const std::size_t n = g.num_nodes();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  double previous = -std::numeric_limits<double>::infinity();

  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    adjacency_multiply(g, x, y);
    const double estimate = norm2(y);
    if (std::abs(estimate - previous) <= options.tolerance * std::max(1.0, estimate)) {
      EigenPair result;
      result.iterations = it;
      result.vector.resize(n);
      for (std::size_t i = 0; i < n; ++i) result.vector[i] = x[i] + y[i] / estimate;
      const double scale = norm2(result.vector);
      for (double& value : result.vector) value /= scale;
      adjacency_multiply(g, result.vector, y);
      result.lambda = std::inner_product(result.vector.begin(), result.vector.end(), y.begin(), 0.0);
      return result;
    }
    previous = estimate;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / estimate;
  }
  throw ConvergenceError("power iteration did not converge within " + std::to_string(options.max_iterations) +
                             " iterations",
                         previous, std::move(x));
}

}  // namespace contain
