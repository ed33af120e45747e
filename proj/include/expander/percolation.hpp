#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expander/graph.hpp"
#include "expander/metrics.hpp"

namespace expander {

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t x);
  /// Returns false when x and y were already joined.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }
  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

/// Order-sensitive 64-bit fingerprint of a graph's edge list.
std::uint64_t graph_fingerprint(const Graph& g);

struct PercolationSample {
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<Edge> retained;  ///< lexicographic order
  std::uint64_t host_fingerprint = 0;
  std::size_t host_vertices = 0;
};

/// One uniform u_e per edge in lexicographic edge order, drawn from the
/// seed's "percolation" stream; edge e is kept iff u_e < p. For a fixed seed
/// the retained sets are therefore nested in p.
PercolationSample percolate(const Graph& g, double p, std::uint64_t seed);

/// The per-edge uniforms behind percolate(g, p, seed), for any p.
std::vector<double> percolation_uniforms(const Graph& g, std::uint64_t seed);

struct ComponentSummary {
  std::size_t count = 0;
  std::vector<std::size_t> sizes;  ///< descending
  double giant_fraction = 0.0;
};

ComponentSummary component_summary(std::size_t n, std::span<const Edge> edges);
/// Throws InvalidInput when the sample was drawn on a different host.
ComponentSummary component_summary(const Graph& g, const PercolationSample& sample);

struct ConditionCheck {
  double value = 0.0;  ///< rho_star(g) * max_degree(g) * p
  bool satisfied = false;  ///< value < 1 by more than 1e-9
};

ConditionCheck condition_check(const Graph& g, double p, const SpectrumOptions& options = {});
/// Same check with a precomputed rho_star.
ConditionCheck condition_check(double rho_star, std::size_t max_degree, double p);

struct SweepRow {
  double p = 0.0;
  std::size_t seed_count = 0;
  double giant_mean = 0.0;
  double giant_std = 0.0;  ///< sample standard deviation; 0 for one seed
  std::optional<ConditionCheck> condition;
};

/// Seed i of every grid point is split_seed(base_seed, i), shared across the
/// grid, so per-seed outcomes are coupled monotonically in p. The condition
/// column is filled when `with_condition` is set and g is connected.
std::vector<SweepRow> percolation_sweep(const Graph& g, std::span<const double> grid,
                                        std::size_t seeds_per_p, std::uint64_t base_seed,
                                        bool with_condition = true,
                                        const SpectrumOptions& options = {});

/// CSV with header p,seed_count,giant_mean,giant_std,condition_value,condition_ok.
std::string format_sweep_csv(std::span<const SweepRow> rows);

}  // namespace expander
