#include "expander/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expander/errors.hpp"
#include "expander/format.hpp"
#include "expander/random.hpp"

namespace expander {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --components_;
  return true;
}

std::uint64_t graph_fingerprint(const Graph& g) {
  std::uint64_t h = mix64(g.num_vertices());
  for (const Edge& e : g.edges()) h = mix64(h ^ ((std::uint64_t{e.u} << 32) | e.v));
  return h;
}

std::vector<double> percolation_uniforms(const Graph& g, std::uint64_t seed) {
  Rng rng(split_seed(seed, "percolation"));
  std::vector<double> u(g.num_edges());
  for (double& x : u) x = rng.uniform();
  return u;
}

PercolationSample percolate(const Graph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("percolation probability must lie in [0, 1], got " + format_real(p));
  }
  PercolationSample s;
  s.p = p;
  s.seed = seed;
  s.host_fingerprint = graph_fingerprint(g);
  s.host_vertices = g.num_vertices();
  const auto edges = g.edges();
  const auto u = percolation_uniforms(g, seed);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (u[i] < p) s.retained.push_back(edges[i]);
  }
  return s;
}

ComponentSummary component_summary(std::size_t n, std::span<const Edge> edges) {
  UnionFind uf(n);
  for (const Edge& e : edges) uf.unite(e.u, e.v);
  ComponentSummary out;
  out.count = uf.components();
  for (std::size_t v = 0; v < n; ++v) {
    if (uf.find(v) == v) out.sizes.push_back(uf.size_of(v));
  }
  std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
  out.giant_fraction = n == 0 ? 0.0 : static_cast<double>(out.sizes.front()) / static_cast<double>(n);
  return out;
}

ComponentSummary component_summary(const Graph& g, const PercolationSample& sample) {
  if (sample.host_vertices != g.num_vertices() || sample.host_fingerprint != graph_fingerprint(g)) {
    throw InvalidInput("percolation sample was drawn on a different host graph");
  }
  return component_summary(g.num_vertices(), sample.retained);
}

ConditionCheck condition_check(double rho_star, std::size_t max_degree, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput("percolation probability must lie in [0, 1], got " + format_real(p));
  }
  const double value = rho_star * static_cast<double>(max_degree) * p;
  // Within eigensolver tolerance of 1 the strict inequality is undecided.
  return {value, value < 1.0 - 1e-9};
}

ConditionCheck condition_check(const Graph& g, double p, const SpectrumOptions& options) {
  return condition_check(spectrum(g, options).rho_star, g.max_degree(), p);
}

std::vector<SweepRow> percolation_sweep(const Graph& g, std::span<const double> grid,
                                        std::size_t seeds_per_p, std::uint64_t base_seed,
                                        bool with_condition, const SpectrumOptions& options) {
  if (grid.empty()) throw InvalidInput("percolation sweep needs a nonempty p grid");
  if (seeds_per_p == 0) throw InvalidInput("percolation sweep needs at least one seed per p");
  for (double p : grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidInput("percolation probability must lie in [0, 1], got " + format_real(p));
    }
  }
  std::optional<double> rho_star;
  if (with_condition && g.num_vertices() >= 2 && is_connected(g)) {
    rho_star = spectrum(g, options).rho_star;
  }

  // One set of uniforms per seed, reused for every grid point.
  const auto edges = g.edges();
  std::vector<std::vector<double>> uniforms;
  uniforms.reserve(seeds_per_p);
  for (std::size_t i = 0; i < seeds_per_p; ++i) {
    uniforms.push_back(percolation_uniforms(g, split_seed(base_seed, i)));
  }

  std::vector<SweepRow> rows;
  std::vector<Edge> kept;
  for (double p : grid) {
    SweepRow row;
    row.p = p;
    row.seed_count = seeds_per_p;
    std::vector<double> fractions;
    for (const auto& u : uniforms) {
      kept.clear();
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (u[e] < p) kept.push_back(edges[e]);
      }
      fractions.push_back(component_summary(g.num_vertices(), kept).giant_fraction);
    }
    const double n = static_cast<double>(fractions.size());
    const auto [lo, hi] = std::minmax_element(fractions.begin(), fractions.end());
    row.giant_mean = std::accumulate(fractions.begin(), fractions.end(), 0.0) / n;
    if (*lo == *hi) {
      row.giant_mean = *lo;
    } else {
      double ss = 0.0;
      for (double f : fractions) ss += (f - row.giant_mean) * (f - row.giant_mean);
      row.giant_std = std::sqrt(ss / (n - 1.0));
    }
    if (rho_star) row.condition = condition_check(*rho_star, g.max_degree(), p);
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "p,seed_count,giant_mean,giant_std,condition_value,condition_ok\n";
  for (const SweepRow& r : rows) {
    out += format_real(r.p) + "," + std::to_string(r.seed_count) + "," + format_real(r.giant_mean) +
           "," + format_real(r.giant_std) + ",";
    if (r.condition) {
      out += format_real(r.condition->value) + "," + (r.condition->satisfied ? "true" : "false");
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace expander
