// Slow, independently coded reference implementations used as test oracles.
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "expander/graph.hpp"
#include "expander/metrics.hpp"

namespace oracle {

using expander::Edge;
using expander::Graph;
using expander::Rational;
using expander::Vertex;

inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

// min |outer boundary(S)| / |S| over 0 < |S| < n/2, enumerating subsets as
// bool vectors and counting the boundary with an explicit set.
inline Rational vertex_expansion(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto a = adjacency_matrix(g);
  std::optional<Rational> best;
  std::vector<bool> in(n, false);
  for (std::uint64_t code = 1; code < (std::uint64_t{1} << n); ++code) {
    std::size_t size = 0;
    for (std::size_t v = 0; v < n; ++v) {
      in[v] = (code >> v) & 1;
      size += in[v];
    }
    if (2 * size >= n) continue;
    std::set<std::size_t> boundary;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in[v]) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (a[v][w] && !in[w]) boundary.insert(w);
      }
    }
    const Rational r(static_cast<std::int64_t>(boundary.size()), static_cast<std::int64_t>(size));
    if (!best || r < *best) best = r;
  }
  return *best;
}

// min e(S, S^c) / vol(S) over nonempty S with vol(S) <= vol(G) / 2.
inline Rational conductance(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto a = adjacency_matrix(g);
  std::int64_t total = 0;
  for (std::size_t v = 0; v < n; ++v) total += static_cast<std::int64_t>(g.degree(v));
  std::optional<Rational> best;
  for (std::uint64_t code = 1; code + 1 < (std::uint64_t{1} << n); ++code) {
    std::int64_t vol = 0;
    std::int64_t cut = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!((code >> v) & 1)) continue;
      vol += static_cast<std::int64_t>(g.degree(v));
      for (std::size_t w = 0; w < n; ++w) cut += a[v][w] && !((code >> w) & 1);
    }
    if (vol == 0 || 2 * vol > total) continue;
    const Rational r(cut, vol);
    if (!best || r < *best) best = r;
  }
  return *best;
}

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

inline std::vector<std::vector<std::size_t>> all_pairs(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] != kInf && d[k][j] != kInf && d[i][k] + d[k][j] < d[i][j]) {
          d[i][j] = d[i][k] + d[k][j];
        }
      }
    }
  }
  return d;
}

inline std::optional<std::size_t> diameter(const Graph& g) {
  std::size_t best = 0;
  for (const auto& row : all_pairs(g)) {
    for (std::size_t x : row) {
      if (x == kInf) return std::nullopt;
      best = std::max(best, x);
    }
  }
  return best;
}

// Shortest cycle through each edge = 1 + distance between its endpoints
// once the edge itself is removed.
inline std::optional<std::size_t> girth(const Graph& g) {
  const auto edges = g.edges();
  std::optional<std::size_t> best;
  for (std::size_t skip = 0; skip < edges.size(); ++skip) {
    std::vector<std::vector<Vertex>> adj(g.num_vertices());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i == skip) continue;
      adj[edges[i].u].push_back(edges[i].v);
      adj[edges[i].v].push_back(edges[i].u);
    }
    std::vector<std::size_t> dist(g.num_vertices(), kInf);
    std::queue<Vertex> q;
    dist[edges[skip].u] = 0;
    q.push(edges[skip].u);
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      for (Vertex y : adj[x]) {
        if (dist[y] == kInf) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
      }
    }
    if (dist[edges[skip].v] != kInf) {
      const std::size_t len = dist[edges[skip].v] + 1;
      if (!best || len < *best) best = len;
    }
  }
  return best;
}

inline bool connected(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = n;
  for (const Edge& e : edges) {
    const auto a = find(e.u);
    const auto b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

// Random connected simple graph: a random tree plus `extra` random edges.
inline Graph random_connected(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
  std::set<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    edges.insert(expander::make_edge(static_cast<Vertex>(v), static_cast<Vertex>(pick(rng))));
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  while (edges.size() < std::min(max_edges, n - 1 + extra)) {
    const auto u = static_cast<Vertex>(any(rng));
    const auto v = static_cast<Vertex>(any(rng));
    if (u != v) edges.insert(expander::make_edge(u, v));
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph::from_edges(n, list);
}

inline bool meets(const std::optional<std::size_t>& girth, std::size_t t) {
  return !girth || *girth >= t;
}

// Whether some connected spanning subgraph has girth >= t.
inline bool spanning_subgraph_exists(const Graph& g, std::size_t t) {
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  const std::size_t n = g.num_vertices();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
    std::vector<Edge> keep;
    for (std::size_t i = 0; i < m; ++i) {
      if ((code >> i) & 1) keep.push_back(edges[i]);
    }
    if (keep.size() + 1 < n || !connected(n, keep)) continue;
    if (meets(oracle::girth(Graph::from_edges(n, keep)), t)) return true;
  }
  return false;
}

}  // namespace oracle
