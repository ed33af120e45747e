#include "expander/search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "expander/detail/cycle_search.hpp"
#include "expander/errors.hpp"
#include "expander/percolation.hpp"
#include "expander/random.hpp"

namespace expander {

namespace {

/// Mutable simple graph with sorted adjacency rows, for search internals.
class EdgeSetGraph {
 public:
  EdgeSetGraph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    for (const Edge& e : edges) add(e);
  }

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return m_; }
  const std::vector<Vertex>& neighbors(Vertex v) const noexcept { return adj_[v]; }
  std::size_t degree(Vertex v) const noexcept { return adj_[v].size(); }

  bool contains(Edge e) const {
    const auto& row = adj_[e.u];
    return std::binary_search(row.begin(), row.end(), e.v);
  }

  void add(Edge e) {
    insert(adj_[e.u], e.v);
    insert(adj_[e.v], e.u);
    ++m_;
  }

  void remove(Edge e) {
    erase(adj_[e.u], e.v);
    erase(adj_[e.v], e.u);
    --m_;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  std::size_t component_count() const {
    UnionFind uf(adj_.size());
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) uf.unite(u, v);
      }
    }
    return uf.components();
  }

  /// Distance from u to v if it is at most `limit`.
  std::optional<std::size_t> distance_within(Vertex u, Vertex v, std::size_t limit,
                                             std::vector<Distance>& dist,
                                             std::vector<Vertex>& queue) const {
    if (dist.size() != adj_.size()) dist.assign(adj_.size(), kUnreachable);
    queue.assign(1, u);
    dist[u] = 0;
    std::optional<std::size_t> found;
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
      const Vertex x = queue[head];
      if (static_cast<std::size_t>(dist[x]) >= limit) break;
      for (Vertex y : adj_[x]) {
        if (dist[y] != kUnreachable) continue;
        dist[y] = dist[x] + 1;
        if (y == v) {
          found = static_cast<std::size_t>(dist[y]);
          break;
        }
        queue.push_back(y);
      }
    }
    for (Vertex x : queue) dist[x] = kUnreachable;
    dist[v] = kUnreachable;
    return found;
  }

 private:
  static void insert(std::vector<Vertex>& row, Vertex v) {
    row.insert(std::lower_bound(row.begin(), row.end(), v), v);
  }
  static void erase(std::vector<Vertex>& row, Vertex v) {
    row.erase(std::lower_bound(row.begin(), row.end(), v));
  }

  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

auto neighbors_of(const EdgeSetGraph& g) {
  return [&g](Vertex v) -> const std::vector<Vertex>& { return g.neighbors(v); };
}

/// Girth capped at `target`: returns target when no cycle is shorter.
std::size_t capped_girth(const EdgeSetGraph& g, std::size_t target) {
  auto search = detail::make_cycle_search(g.num_vertices(), neighbors_of(g));
  const auto c = search.shortest(target);
  return c ? c->length : target;
}

/// Trims in place; returns the number of deleted edges.
std::size_t trim_in_place(EdgeSetGraph& g, std::size_t target) {
  auto search = detail::make_cycle_search(g.num_vertices(), neighbors_of(g));
  const std::size_t n = g.num_vertices();
  // Deletions never shorten cycles: roots below `resume` stay free of cycles
  // of length `lower`, so a scan can restart there while the girth is `lower`.
  std::size_t lower = 3;
  Vertex resume = 0;
  std::size_t deleted = 0;
  bool have_lower = false;
  while (true) {
    std::optional<detail::ClosingEdge> found;
    if (have_lower) {
      for (Vertex r = resume; r < n && !found; ++r) found = search.from_root(r, lower + 1);
    }
    if (!found) {
      found = search.shortest(target, have_lower ? lower + 1 : 3);
      if (!found) break;
    }
    lower = found->length;
    resume = found->root;
    have_lower = true;

    const auto cycle = search.cycle(*found);
    Edge victim{};
    std::size_t best_score = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Edge e = make_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
      const std::size_t score = g.degree(e.u) + g.degree(e.v);
      if (i == 0 || score > best_score || (score == best_score && e < victim)) {
        victim = e;
        best_score = score;
      }
    }
    g.remove(victim);
    ++deleted;
  }
  return deleted;
}

void require_connected_host(const Graph& host) {
  if (!is_connected(host)) throw InvalidInput("host graph must be connected");
}

}  // namespace

std::vector<Vertex> shortest_cycle(const Graph& g) {
  auto search = detail::make_cycle_search(g.num_vertices(),
                                          [&g](Vertex v) { return g.neighbors(v); });
  const auto c = search.shortest();
  if (!c) return {};
  return search.cycle(*c);
}

std::vector<Edge> trim_edges(std::size_t n, std::span<const Edge> edges, std::size_t target) {
  if (target < 3) throw InvalidInput("girth target must be at least 3");
  EdgeSetGraph g(n, edges);
  trim_in_place(g, target);
  return g.edges();
}

Graph trim_to_girth(const Graph& g, std::size_t target) {
  const auto edges = g.edges();
  return Graph::from_edges(g.num_vertices(), trim_edges(g.num_vertices(), edges, target));
}

std::vector<Edge> reconnect_repair(const Graph& host, std::span<const Edge> sub) {
  require_connected_host(host);
  UnionFind uf(host.num_vertices());
  std::vector<Edge> out(sub.begin(), sub.end());
  for (const Edge& e : sub) {
    if (!host.has_edge(e.u, e.v)) throw InvalidInput("subgraph edge is not a host edge");
    uf.unite(e.u, e.v);
  }
  for (const Edge& e : host.edges()) {
    if (uf.components() == 1) break;
    if (uf.unite(e.u, e.v)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> augment_edges(const Graph& host, std::span<const Edge> sub,
                                std::size_t girth_floor, std::size_t budget,
                                bool verify_each_step) {
  if (girth_floor < 3) throw InvalidInput("girth floor must be at least 3");
  const std::size_t n = host.num_vertices();
  EdgeSetGraph g(n, sub);
  const std::size_t min_distance = girth_floor - 1;
  // Unreachable pairs rank above every finite distance.
  const auto infinite = static_cast<std::size_t>(n);

  auto exact_distance = [&](Vertex u, Vertex v) {
    std::vector<Distance> dist(n, kUnreachable);
    std::vector<Vertex> queue{u};
    dist[u] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] != kUnreachable) continue;
        dist[y] = dist[x] + 1;
        if (y == v) return static_cast<std::size_t>(dist[y]);
        queue.push_back(y);
      }
    }
    return infinite;
  };

  struct Candidate {
    std::size_t distance;
    Edge edge;
  };
  auto lower_priority = [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.edge > b.edge;
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(lower_priority)> heap(
      lower_priority);

  const auto host_edges = host.edges();
  {
    std::vector<Distance> dist(n, kUnreachable);
    std::vector<Vertex> queue;
    Vertex bfs_source = static_cast<Vertex>(n);
    for (const Edge& e : host_edges) {
      if (g.contains(e)) continue;
      if (e.u != bfs_source) {
        for (Vertex x : queue) dist[x] = kUnreachable;
        bfs_source = e.u;
        queue.assign(1, e.u);
        dist[e.u] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          for (Vertex y : g.neighbors(queue[head])) {
            if (dist[y] == kUnreachable) {
              dist[y] = dist[queue[head]] + 1;
              queue.push_back(y);
            }
          }
        }
      }
      const std::size_t d =
          dist[e.v] == kUnreachable ? infinite : static_cast<std::size_t>(dist[e.v]);
      if (d >= min_distance) heap.push({d, e});
    }
  }

  const Girth floor_girth = [&]() -> Girth {
    if (!verify_each_step) return std::nullopt;
    auto s = detail::make_cycle_search(n, neighbors_of(g));
    const auto c = s.shortest(girth_floor);
    return c ? c->length : girth_floor;
  }();

  std::size_t added = 0;
  while (added < budget && !heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    const std::size_t now = exact_distance(top.edge.u, top.edge.v);
    if (now < min_distance) continue;
    if (now < top.distance) {
      heap.push({now, top.edge});
      continue;
    }
    g.add(top.edge);
    ++added;
    if (verify_each_step) {
      auto s = detail::make_cycle_search(n, neighbors_of(g));
      const auto c = s.shortest(girth_floor);
      const std::size_t capped = c ? c->length : girth_floor;
      if (capped < *floor_girth) {
        throw std::logic_error("augment_edges created a cycle of length " + std::to_string(capped));
      }
    }
  }
  return g.edges();
}

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::Anneal: return "anneal";
    case Strategy::PercolateRepair: return "percolate-repair";
    case Strategy::Trim: return "trim";
  }
  return "trim";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : all_strategies()) {
    if (to_string(s) == name) return s;
  }
  throw UsageError("unknown strategy '" + std::string(name) +
                   "' (expected trim, percolate-repair or anneal)");
}

std::vector<Strategy> all_strategies() {
  return {Strategy::Anneal, Strategy::PercolateRepair, Strategy::Trim};
}

std::size_t girth_target_for(double ratio, std::size_t diameter) {
  // 0.1 * 10 is 1.0000000000000002 in binary; ceil must still give 1.
  const double scaled = ratio * static_cast<double>(diameter);
  const auto target = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
  return std::max<std::size_t>(3, target);
}

SearchResult validate_result(const Graph& host, std::vector<Edge> kept, std::size_t girth_target,
                             const SearchOptions& options) {
  std::sort(kept.begin(), kept.end());
  const Graph sub = edge_subgraph(host, kept);
  SearchResult r;
  r.kept = std::move(kept);
  r.vertex_count = sub.num_vertices();
  r.girth_target = girth_target;
  r.girth_achieved = girth(sub);
  r.connected = is_connected(sub);
  r.gap = r.connected && sub.num_vertices() >= 2 ? spectrum(sub, options.spectrum).gap : 0.0;
  if (sub.num_vertices() >= 3 && sub.num_vertices() <= options.exact_limit) {
    r.h_exact = cheeger_exact(sub, options.exact_limit).value;
  }
  r.strategy = options.strategy;
  r.seed = options.seed;
  return r;
}

SearchResult anneal_search(const Graph& host, std::size_t girth_target, std::size_t budget,
                           const SearchOptions& options) {
  require_connected_host(host);
  if (girth_target < 3) throw InvalidInput("girth target must be at least 3");
  SearchOptions opts = options;
  opts.strategy = Strategy::Anneal;
  const AnnealOptions& ao = options.anneal;
  const std::size_t n = host.num_vertices();
  const auto host_edges = host.edges();

  const auto start = ao.start_trimmed ? trim_edges(n, host_edges, girth_target) : host_edges;
  EdgeSetGraph state(n, start);

  const double host_gap = n >= 2 ? spectrum(host, options.spectrum).gap : 0.0;
  const double penalty = ao.penalty_scale * std::max(host_gap, 1e-3);

  SpectrumOptions refresh = options.spectrum;
  refresh.tolerance = std::max(refresh.tolerance, ao.refresh_tolerance);
  auto exact_gap = [&]() {
    const auto edges = state.edges();
    const Graph g = Graph::from_edges(n, edges);
    if (n < 2 || !is_connected(g)) return 0.0;
    return spectrum(g, refresh).gap;
  };

  double degree_sum = 0.0;
  double degree_sq_sum = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const auto d = static_cast<double>(state.degree(v));
    degree_sum += d;
    degree_sq_sum += d * d;
  }
  // Squared coefficient of variation of the degree sequence.
  auto irregularity = [&](double sum, double sq_sum) {
    const double mean = sum / static_cast<double>(n);
    if (mean <= 0.0) return 0.0;
    return (sq_sum / static_cast<double>(n) - mean * mean) / (mean * mean);
  };

  // Between exact refreshes the gap is extrapolated from the last exact value
  // by the change in degree irregularity.
  double gap_ref = exact_gap();
  double irregularity_ref = irregularity(degree_sum, degree_sq_sum);
  auto objective = [&](double irr, std::size_t girth_capped, std::size_t components) {
    const double proxy =
        components > 1 ? 0.0 : std::clamp(gap_ref - (irr - irregularity_ref), 0.0, 2.0);
    return proxy - penalty * static_cast<double>(girth_target - girth_capped) -
           penalty * static_cast<double>(components - 1);
  };

  std::size_t girth_now = capped_girth(state, girth_target);
  std::size_t components_now = state.component_count();
  double current = objective(irregularity_ref, girth_now, components_now);
  double best = current;
  std::vector<Edge> best_edges = state.edges();

  std::vector<double> trace;
  trace.reserve(budget);
  Rng rng(split_seed(options.seed, "anneal"));
  const double alpha = budget > 0 ? std::pow(ao.final_fraction, 1.0 / static_cast<double>(budget)) : 1.0;
  double temperature = ao.initial_temperature;
  std::size_t accepted = 0;
  std::vector<Distance> dist_scratch;
  std::vector<Vertex> queue_scratch;

  for (std::size_t step = 0; step < budget; ++step) {
    const Edge e = host_edges[rng.below(host_edges.size())];
    const bool adding = !state.contains(e);
    const double du = static_cast<double>(state.degree(e.u));
    const double dv = static_cast<double>(state.degree(e.v));
    const double delta = adding ? 1.0 : -1.0;
    const double new_sum = degree_sum + 2.0 * delta;
    const double new_sq = degree_sq_sum + (du + delta) * (du + delta) - du * du +
                          (dv + delta) * (dv + delta) - dv * dv;

    std::size_t new_girth = girth_now;
    if (adding) {
      // A new edge closes cycles of length dist(u, v) + 1 only.
      if (girth_now > 3) {
        const auto d = state.distance_within(e.u, e.v, girth_now - 2, dist_scratch, queue_scratch);
        if (d) new_girth = std::min(new_girth, *d + 1);
      } else {
        new_girth = 3;
      }
      state.add(e);
    } else {
      state.remove(e);
      if (girth_now < girth_target) new_girth = capped_girth(state, girth_target);
    }
    const std::size_t new_components = state.component_count();
    const double proposal = objective(irregularity(new_sum, new_sq), new_girth, new_components);
    const double change = proposal - current;
    const bool accept = change >= 0.0 || rng.uniform() < std::exp(change / temperature);
    if (accept) {
      degree_sum = new_sum;
      degree_sq_sum = new_sq;
      girth_now = new_girth;
      components_now = new_components;
      current = proposal;
      if (++accepted % ao.refresh_interval == 0) {
        gap_ref = exact_gap();
        irregularity_ref = irregularity(degree_sum, degree_sq_sum);
        current = objective(irregularity_ref, girth_now, components_now);
      }
      if (current > best) {
        best = current;
        best_edges = state.edges();
      }
    } else if (adding) {
      state.remove(e);
    } else {
      state.add(e);
    }
    trace.push_back(best);
    temperature *= alpha;
  }

  // Re-validate both ends and keep the better one under the exact objective.
  auto exact_objective = [&](const SearchResult& r) {
    const std::size_t capped =
        r.girth_achieved ? std::min(*r.girth_achieved, girth_target) : girth_target;
    const std::size_t components = component_summary(n, r.kept).count;
    return r.gap - penalty * static_cast<double>(girth_target - capped) -
           penalty * static_cast<double>(components - 1);
  };
  SearchResult result = validate_result(host, best_edges, girth_target, opts);
  if (budget > 0) {
    SearchResult initial = validate_result(host, start, girth_target, opts);
    if (exact_objective(initial) > exact_objective(result)) result = std::move(initial);
  }
  result.iterations_used = budget;
  result.best_objective_trace = std::move(trace);
  return result;
}

SearchResult search_spanning_subexpander(const Graph& host, std::size_t girth_target,
                                         const SearchOptions& options) {
  require_connected_host(host);
  if (options.budget == 0) throw InvalidInput("search budget must be positive");
  if (girth_target < 3) throw InvalidInput("girth target must be at least 3");
  const std::size_t n = host.num_vertices();

  switch (options.strategy) {
    case Strategy::Trim: {
      EdgeSetGraph g(n, host.edges());
      const std::size_t deleted = trim_in_place(g, girth_target);
      SearchResult r = validate_result(host, g.edges(), girth_target, options);
      r.iterations_used = deleted;
      return r;
    }
    case Strategy::PercolateRepair: {
      double p = 0.95;
      if (options.percolation_p) {
        p = *options.percolation_p;
      } else if (n >= 2) {
        const double scale = spectrum(host, options.spectrum).rho_star *
                             static_cast<double>(host.max_degree());
        if (scale > 0.0) p = std::clamp(1.0 / scale, 0.05, 0.95);
      }
      const auto sample = percolate(host, p, split_seed(options.seed, "percolate-repair"));
      auto sub = reconnect_repair(host, sample.retained);
      const std::size_t repaired = sub.size() - sample.retained.size();
      const std::size_t before_augment = sub.size();
      sub = augment_edges(host, sub, girth_target, options.budget);
      const std::size_t augmented = sub.size() - before_augment;
      EdgeSetGraph g(n, sub);
      const std::size_t deleted = trim_in_place(g, girth_target);
      SearchResult r = validate_result(host, g.edges(), girth_target, options);
      r.iterations_used = repaired + augmented + deleted;
      return r;
    }
    case Strategy::Anneal:
      return anneal_search(host, girth_target, options.budget, options);
  }
  throw InvalidInput("unknown strategy");
}

SearchResult search_with_ratio(const Graph& host, double ratio, const SearchOptions& options) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InvalidInput("girth ratio must lie in (0, 1]");
  const Diameter d = diameter(host);
  if (!d) throw InvalidInput("host graph must be connected");
  return search_spanning_subexpander(host, girth_target_for(ratio, *d), options);
}

}  // namespace expander
