#include "expander/graph.hpp"

#include <algorithm>
#include <string>

#include "expander/errors.hpp"

namespace expander {

namespace {

std::string describe(std::size_t index, Edge e) {
  return "edge #" + std::to_string(index) + " (" + std::to_string(e.u) + ", " +
         std::to_string(e.v) + ")";
}

}  // namespace

VertexSubset::VertexSubset(std::size_t host_size, std::vector<Vertex> members)
    : host_size_(host_size), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= host_size_) {
    throw InvalidInput("vertex " + std::to_string(members_.back()) +
                       " out of range for host of size " + std::to_string(host_size_));
  }
}

VertexSubset VertexSubset::from_mask(std::size_t host_size, std::uint64_t mask) {
  if (host_size > 64) throw InvalidInput("mask form needs host_size <= 64");
  std::vector<Vertex> members;
  for (Vertex v = 0; v < host_size; ++v) {
    if ((mask >> v) & 1U) members.push_back(v);
  }
  return VertexSubset(host_size, std::move(members));
}

bool VertexSubset::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::uint64_t VertexSubset::mask() const {
  if (host_size_ > 64) throw InvalidInput("mask form needs host_size <= 64");
  std::uint64_t m = 0;
  for (Vertex v : members_) m |= std::uint64_t{1} << v;
  return m;
}

Graph Graph::from_edge_list(const EdgeList& el) {
  return from_edges(el.n, el.edges);
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw InvalidInput("graph needs at least one vertex");
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge e = edges[i];
    if (e.u >= n || e.v >= n) {
      throw InvalidInput(describe(i, e) + ": vertex index >= n = " + std::to_string(n));
    }
    if (e.u == e.v) throw InvalidInput(describe(i, e) + ": self-loop");
    sorted.push_back(make_edge(e.u, e.v));
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw InvalidInput("duplicate edge (" + std::to_string(dup->u) + ", " +
                       std::to_string(dup->v) + ")");
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : sorted) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.targets_.resize(2 * sorted.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lower neighbors first, then higher ones; lexicographic edge order keeps
  // both runs increasing, so every row comes out sorted.
  for (const Edge& e : sorted) g.targets_[cursor[e.v]++] = e.u;
  for (const Edge& e : sorted) g.targets_[cursor[e.u]++] = e.v;
  return g;
}

Graph Graph::empty(std::size_t n) { return from_edges(n, {}); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

EdgeList Graph::to_edge_list() const { return {num_vertices(), edges()}; }

std::size_t Graph::max_degree() const noexcept {
  std::size_t d = 0;
  for (Vertex v = 0; v < num_vertices(); ++v) d = std::max(d, degree(v));
  return d;
}

std::size_t Graph::min_degree() const noexcept {
  std::size_t d = num_vertices() == 0 ? 0 : degree(0);
  for (Vertex v = 0; v < num_vertices(); ++v) d = std::min(d, degree(v));
  return d;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Distance> bfs_distances(const Graph& g, Vertex source) {
  const std::size_t n = g.num_vertices();
  if (source >= n) {
    throw InvalidInput("source " + std::to_string(source) + " out of range (n = " +
                       std::to_string(n) + ")");
  }
  std::vector<Distance> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](Distance d) { return d == kUnreachable; });
}

std::vector<std::size_t> component_labels(const Graph& g, std::size_t* count) {
  const std::size_t n = g.num_vertices();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnset);
  std::vector<Vertex> stack;
  std::size_t next = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count != nullptr) *count = next;
  return label;
}

std::optional<Vertex> InducedSubgraph::old_to_new(Vertex old) const {
  auto it = std::lower_bound(new_to_old.begin(), new_to_old.end(), old);
  if (it == new_to_old.end() || *it != old) return std::nullopt;
  return static_cast<Vertex>(it - new_to_old.begin());
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSubset& s) {
  if (s.empty()) throw InvalidInput("induced subgraph of an empty vertex subset");
  if (s.host_size() != g.num_vertices()) {
    throw InvalidInput("vertex subset host size does not match the graph");
  }
  InducedSubgraph out{Graph::empty(s.size()), s.members()};
  std::vector<Edge> edges;
  for (Vertex i = 0; i < out.new_to_old.size(); ++i) {
    for (Vertex w : g.neighbors(out.new_to_old[i])) {
      if (auto j = out.old_to_new(w); j && i < *j) edges.push_back({i, *j});
    }
  }
  out.graph = Graph::from_edges(s.size(), edges);
  return out;
}

InducedSubgraph induced_ball(const Graph& g, Vertex center, std::size_t radius) {
  const auto dist = bfs_distances(g, center);
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (dist[v] != kUnreachable && static_cast<std::size_t>(dist[v]) <= radius) {
      members.push_back(v);
    }
  }
  return induced_subgraph(g, VertexSubset(g.num_vertices(), std::move(members)));
}

Graph edge_subgraph(const Graph& g, std::span<const Edge> keep) {
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (!g.has_edge(keep[i].u, keep[i].v)) {
      throw InvalidInput(describe(i, keep[i]) + " is not an edge of the host graph");
    }
  }
  return Graph::from_edges(g.num_vertices(), keep);
}

}  // namespace expander
