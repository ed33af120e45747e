#include "expander/builders.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "expander/errors.hpp"
#include "expander/random.hpp"

namespace expander {

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t retry_cap) {
  if (n == 0) throw InvalidInput("random regular graph needs n >= 1");
  if ((n * d) % 2 != 0) {
    throw InvalidInput("n*d must be even (n = " + std::to_string(n) + ", d = " +
                       std::to_string(d) + ")");
  }
  if (d >= n) {
    throw InvalidInput("degree must be below n (n = " + std::to_string(n) + ", d = " +
                       std::to_string(d) + ")");
  }
  Rng rng(split_seed(seed, "random-regular"));
  std::vector<Vertex> stubs(n * d);
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  for (std::size_t attempt = 0; attempt < retry_cap; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<Vertex>(i / d);
    // Fisher-Yates, then consecutive stubs pair up: a uniform perfect matching.
    for (std::size_t i = stubs.size(); i > 1; --i) {
      std::swap(stubs[i - 1], stubs[rng.below(i)]);
    }
    edges.clear();
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      if (stubs[i] == stubs[i + 1]) {
        simple = false;
        break;
      }
      edges.push_back(make_edge(stubs[i], stubs[i + 1]));
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph::from_edges(n, edges);
  }
  throw ComputationRefused("configuration model: no simple sample within " +
                           std::to_string(retry_cap) + " attempts (n = " + std::to_string(n) +
                           ", d = " + std::to_string(d) + ")");
}

Graph graph_power(const Graph& g, std::size_t k) {
  if (k == 0) throw InvalidInput("graph power exponent must be at least 1");
  const std::size_t n = g.num_vertices();
  std::vector<Edge> edges;
  std::vector<Distance> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    queue.assign(1, s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (static_cast<std::size_t>(dist[u]) == k) continue;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (Vertex v : queue) {
      if (s < v) edges.push_back({s, v});
      dist[v] = kUnreachable;
    }
  }
  return Graph::from_edges(n, edges);
}

Graph cartesian_product(const Graph& g, const Graph& h, std::size_t max_vertices) {
  const std::size_t ng = g.num_vertices();
  const std::size_t nh = h.num_vertices();
  if (nh != 0 && ng > max_vertices / nh) {
    throw ComputationRefused("product of " + std::to_string(ng) + " x " + std::to_string(nh) +
                             " vertices exceeds the cap " + std::to_string(max_vertices));
  }
  auto id = [nh](Vertex u, Vertex a) { return static_cast<Vertex>(u * nh + a); };
  std::vector<Edge> edges;
  edges.reserve(ng * h.num_edges() + nh * g.num_edges());
  const auto h_edges = h.edges();
  for (Vertex u = 0; u < ng; ++u) {
    for (const Edge& e : h_edges) edges.push_back({id(u, e.u), id(u, e.v)});
  }
  for (const Edge& e : g.edges()) {
    for (Vertex a = 0; a < nh; ++a) edges.push_back({id(e.u, a), id(e.v, a)});
  }
  return Graph::from_edges(ng * nh, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(make_edge(v, static_cast<Vertex>((v + 1) % n)));
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  if (n < 1) throw InvalidInput("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  }
  std::vector<Edge> edges;
  for (Vertex i = 0; i < pairs.size(); ++i) {
    for (Vertex j = i + 1; j < pairs.size(); ++j) {
      const auto [a, b] = pairs[i];
      const auto [c, d] = pairs[j];
      if (a != c && a != d && b != c && b != d) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(pairs.size(), edges);
}

Graph named_graph(std::string_view kind, std::size_t n) {
  if (kind == "cycle") return cycle_graph(n);
  if (kind == "complete") return complete_graph(n);
  if (kind == "petersen") return petersen_graph();
  throw InvalidInput("unknown named graph '" + std::string(kind) + "'");
}

}  // namespace expander
