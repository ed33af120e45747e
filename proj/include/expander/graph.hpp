#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace expander {

using Vertex = std::uint32_t;

/// Undirected edge, stored normalized with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Normalizes an unordered pair; the caller guarantees a != b.
constexpr Edge make_edge(Vertex a, Vertex b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Serialization form of a graph: vertex count plus pairs with u < v.
struct EdgeList {
  std::size_t n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

/// A set of vertices of a host graph with n vertices, kept sorted.
class VertexSubset {
 public:
  VertexSubset(std::size_t host_size, std::vector<Vertex> members);

  /// Subset given by the low `host_size` bits of `mask` (host_size <= 64).
  static VertexSubset from_mask(std::size_t host_size, std::uint64_t mask);

  std::size_t host_size() const noexcept { return host_size_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<Vertex>& members() const noexcept { return members_; }
  bool contains(Vertex v) const;
  std::uint64_t mask() const;

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

 private:
  std::size_t host_size_;
  std::vector<Vertex> members_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency is stored in compressed rows with every row strictly sorted, so
/// two graphs with the same edge set compare equal.
class Graph {
 public:
  /// Builds a graph; rejects self-loops, duplicate edges, out-of-range
  /// endpoints and n == 0 with InvalidInput naming the offending entry.
  /// Pairs may be given in either orientation.
  static Graph from_edge_list(const EdgeList& el);
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// n isolated vertices.
  static Graph empty(std::size_t n);

  EdgeList to_edge_list() const;
  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;
  std::size_t min_degree() const noexcept;
  bool has_edge(Vertex u, Vertex v) const noexcept;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph() = default;

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

/// BFS distance; kUnreachable marks vertices in other components.
using Distance = std::int32_t;
inline constexpr Distance kUnreachable = -1;

std::vector<Distance> bfs_distances(const Graph& g, Vertex source);

bool is_connected(const Graph& g);

/// Component index per vertex, components numbered by smallest member.
std::vector<std::size_t> component_labels(const Graph& g, std::size_t* count = nullptr);

/// Subgraph on a vertex subset, relabeled 0..k-1 in increasing order of the
/// original index.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> new_to_old;

  std::optional<Vertex> old_to_new(Vertex old) const;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSubset& s);

/// Induced subgraph on the closed ball of the given radius around center.
InducedSubgraph induced_ball(const Graph& g, Vertex center, std::size_t radius);

/// Spanning subgraph with exactly the listed edges; every edge must be in g.
Graph edge_subgraph(const Graph& g, std::span<const Edge> keep);

}  // namespace expander
