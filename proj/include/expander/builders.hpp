#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "expander/graph.hpp"

namespace expander {

inline constexpr std::size_t kDefaultRetryCap = 10'000;
inline constexpr std::size_t kDefaultProductCap = std::size_t{1} << 24;

/// Uniform simple d-regular graph on n vertices: configuration model on n*d
/// stubs, whole sample rejected on any self-loop or parallel edge.
/// Deterministic in seed; throws InvalidInput for odd n*d or d >= n and
/// ComputationRefused after `retry_cap` rejected samples.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed,
                     std::size_t retry_cap = kDefaultRetryCap);

/// Same vertices, u ~ v iff 1 <= dist(u, v) <= k.
Graph graph_power(const Graph& g, std::size_t k);

/// Vertex (u, a) has index u * |h| + a.
Graph cartesian_product(const Graph& g, const Graph& h, std::size_t max_vertices = kDefaultProductCap);

Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Kneser graph K(5, 2): 2-subsets of {0..4}, adjacent when disjoint.
Graph petersen_graph();

/// "cycle", "complete" or "petersen" (n ignored for petersen).
Graph named_graph(std::string_view kind, std::size_t n = 0);

}  // namespace expander
