#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "expander/graph.hpp"

namespace expander {

using Rational = boost::rational<std::int64_t>;

/// Shortest cycle length; std::nullopt means the graph is a forest.
using Girth = std::optional<std::size_t>;
/// Largest eccentricity; std::nullopt means some pair is unreachable.
using Diameter = std::optional<std::size_t>;

/// Unbounded girth meets every target.
constexpr bool girth_at_least(const Girth& g, std::size_t target) noexcept {
  return !g.has_value() || *g >= target;
}

/// Orders girths with "unbounded" as +infinity.
constexpr bool girth_less(const Girth& a, const Girth& b) noexcept {
  if (!a.has_value()) return false;
  if (!b.has_value()) return true;
  return *a < *b;
}

inline constexpr std::size_t kDefaultExactLimit = 24;

/// Exact optimum of a subset-ratio problem together with an optimal subset.
/// Ties go to the smallest subset, then to the lexicographically smallest
/// sorted member list.
struct ExactExpansion {
  Rational value;
  VertexSubset witness;
};

/// Vertex expansion h = min |dS| / |S| over 0 < |S| < n/2 (strict), where dS
/// is the set of vertices outside S with a neighbor in S.
///
/// Disconnected graphs return 0 with the smallest component as witness, even
/// when every component has exactly n/2 vertices.
///
/// Throws InvalidInput when n < 3 and ComputationRefused when n > max_n.
ExactExpansion cheeger_exact(const Graph& g, std::size_t max_n = kDefaultExactLimit);

/// Edge conductance min e(S, S^c) / vol(S) over nonempty S with
/// vol(S) <= vol(G) / 2. Requires a connected graph with 2 <= n <= max_n.
ExactExpansion conductance_exact(const Graph& g, std::size_t max_n = kDefaultExactLimit);

struct SpectrumOptions {
  /// Largest n solved with a dense symmetric eigensolver; Lanczos above.
  std::size_t dense_limit = 512;
  /// Absolute tolerance on the reported eigenvalues.
  double tolerance = 1e-9;
  /// Cap on Krylov steps for the iterative path.
  std::size_t max_iterations = 100000;
  /// Seed of the iterative solver's start vector.
  std::uint64_t seed = 0x5eed;
};

/// Extremes of the non-principal spectrum of D^{-1/2} A D^{-1/2}.
struct Spectrum {
  double lambda2 = 0.0;     ///< second-largest eigenvalue
  double lambda_min = 0.0;  ///< smallest eigenvalue
  double rho_star = 0.0;    ///< max(|lambda2|, |lambda_min|)
  double gap = 0.0;         ///< 1 - lambda2
};

/// Throws InvalidInput for n < 2 or a disconnected graph; ConvergenceError
/// when the iterative path exceeds its cap.
Spectrum spectrum(const Graph& g, const SpectrumOptions& options = {});

/// Exact girth by truncated BFS from every vertex.
Girth girth(const Graph& g);

Diameter diameter(const Graph& g);

struct BallRow {
  Vertex center = 0;
  std::size_t ball_size = 0;
  std::optional<double> gap;        ///< absent for single-vertex balls
  std::optional<Rational> h_exact;  ///< present when 3 <= size <= exact_limit
};

struct BallProfile {
  std::size_t radius = 0;
  std::vector<BallRow> rows;
  std::optional<double> min_gap;
  std::optional<double> median_gap;
  std::optional<Rational> min_h_exact;
};

/// Metrics of the induced ball of the given radius around every vertex.
BallProfile ball_expansion_profile(const Graph& g, std::size_t radius,
                                   std::size_t exact_limit = kDefaultExactLimit,
                                   const SpectrumOptions& options = {});

struct MetricsReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t max_degree = 0;
  std::optional<Rational> h_exact;
  std::optional<Rational> conductance_exact;
  /// Spectral fields are present for connected graphs with n >= 2.
  std::optional<double> lambda2;
  std::optional<double> rho_star;
  std::optional<double> gap;
  Girth girth;
  Diameter diameter;
};

/// Everything measurable about g; exact fields only when n <= exact_limit.
MetricsReport measure(const Graph& g, std::size_t exact_limit = kDefaultExactLimit,
                      const SpectrumOptions& options = {});

}  // namespace expander
