#pragma once

#include <cstddef>
#include <cstdint>

#include "contain/graph.hpp"

namespace contain {

// Uniform simple graph with exactly m edges on nodes "0".."n-1".
Graph gnm_random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

// Exactly m edges over `groups` equal-sized blocks; each edge stays inside the block of a
// uniformly drawn endpoint with probability 1 - mixing.
Graph planted_partition_graph(std::size_t n, std::size_t m, std::size_t groups, double mixing, std::uint64_t seed);

}  // namespace contain
