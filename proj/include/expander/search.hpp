#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expander/graph.hpp"
#include "expander/metrics.hpp"

namespace expander {

/// A shortest cycle as a vertex sequence (the closing edge back to the first
/// vertex is implied); empty for forests. Deterministic: the smallest BFS
/// root that closes a shortest cycle, then the first closing edge found in
/// BFS order.
std::vector<Vertex> shortest_cycle(const Graph& g);

/// Deletes edges on shortest cycles until no cycle shorter than `target`
/// remains. From each cycle the edge with the largest endpoint-degree sum
/// (current degrees) goes, ties to the lexicographically smallest edge.
/// Cycle edges are never bridges, so connectivity is preserved.
std::vector<Edge> trim_edges(std::size_t n, std::span<const Edge> edges, std::size_t target);
Graph trim_to_girth(const Graph& g, std::size_t target);

/// Adds host edges (lexicographic order, Kruskal style) joining distinct
/// components of `sub` until it spans a connected graph. Every added edge is
/// a bridge when inserted, so the girth is unchanged. Host must be connected.
std::vector<Edge> reconnect_repair(const Graph& host, std::span<const Edge> sub);

/// Greedily adds host edges {u, v} not in `sub` whose endpoints are at
/// distance >= girth_floor - 1 in the current subgraph, largest distance
/// first (unreachable counts as infinite), ties lexicographic, until `budget`
/// additions or no candidate remains. With `verify_each_step` the girth is
/// recomputed after every insertion and a violation throws std::logic_error.
std::vector<Edge> augment_edges(const Graph& host, std::span<const Edge> sub,
                                std::size_t girth_floor, std::size_t budget,
                                bool verify_each_step = false);

enum class Strategy { Anneal, PercolateRepair, Trim };

std::string_view to_string(Strategy s) noexcept;
Strategy parse_strategy(std::string_view name);
/// All strategies in name order.
std::vector<Strategy> all_strategies();

/// max(3, ceil(ratio * diameter)), robust to binary rounding of the ratio.
std::size_t girth_target_for(double ratio, std::size_t diameter);

struct AnnealOptions {
  double initial_temperature = 1.0;
  /// Final temperature as a fraction of the initial one.
  double final_fraction = 1e-3;
  /// Exact gap refresh after this many accepted moves.
  std::size_t refresh_interval = 64;
  /// Penalties are this multiple of the host's spectral gap.
  double penalty_scale = 10.0;
  /// Start from the trimmed host instead of the host itself.
  bool start_trimmed = true;
  /// Tolerance of the in-loop exact gap refreshes.
  double refresh_tolerance = 1e-6;
};

struct SearchOptions {
  Strategy strategy = Strategy::Trim;
  /// Anneal: number of moves. Percolate-repair: augmentation budget. Trim
  /// runs to completion.
  std::size_t budget = 10'000;
  std::uint64_t seed = 0;
  /// Percolate-repair retention probability; default 1 / (rho_star d)
  /// clamped to [0.05, 0.95].
  std::optional<double> percolation_p;
  AnnealOptions anneal;
  std::size_t exact_limit = kDefaultExactLimit;
  SpectrumOptions spectrum;
};

struct SearchResult {
  std::vector<Edge> kept;
  std::size_t vertex_count = 0;
  std::size_t girth_target = 0;
  Girth girth_achieved;
  /// Spectral gap of the result; 0 when disconnected.
  double gap = 0.0;
  std::optional<Rational> h_exact;
  bool connected = false;
  Strategy strategy = Strategy::Trim;
  std::uint64_t seed = 0;
  std::size_t iterations_used = 0;
  /// Anneal only: best objective value after every move.
  std::vector<double> best_objective_trace;

  bool meets_target() const { return connected && girth_at_least(girth_achieved, girth_target); }
};

/// Recomputes girth, connectivity, gap and (small n) exact expansion of the
/// spanning subgraph `kept`.
SearchResult validate_result(const Graph& host, std::vector<Edge> kept, std::size_t girth_target,
                             const SearchOptions& options);

/// Runs one strategy for an absolute girth target. Throws InvalidInput for a
/// disconnected host, a zero budget or a target below 3.
SearchResult search_spanning_subexpander(const Graph& host, std::size_t girth_target,
                                         const SearchOptions& options);

/// Same with target max(3, ceil(ratio * diameter(host))), ratio in (0, 1].
SearchResult search_with_ratio(const Graph& host, double ratio, const SearchOptions& options);

/// Simulated annealing over edge subsets; `budget` may be 0, in which case
/// the validated start state is returned.
SearchResult anneal_search(const Graph& host, std::size_t girth_target, std::size_t budget,
                           const SearchOptions& options);

}  // namespace expander
