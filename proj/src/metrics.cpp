#include "expander/metrics.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "expander/detail/cycle_search.hpp"
#include "expander/errors.hpp"

namespace expander {

namespace {

constexpr std::size_t kMaskLimit = 63;

void check_exact_size(const Graph& g, std::size_t min_n, std::size_t max_n) {
  const std::size_t n = g.num_vertices();
  if (n < min_n) {
    throw InvalidInput("graph too small: n = " + std::to_string(n) + ", need n >= " +
                       std::to_string(min_n));
  }
  if (n > max_n || n > kMaskLimit) {
    throw ComputationRefused("exact computation refused: n = " + std::to_string(n) +
                             " exceeds the limit " + std::to_string(std::min(max_n, kMaskLimit)));
  }
}

std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint64_t> adj(g.num_vertices(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (Vertex w : g.neighbors(v)) adj[v] |= std::uint64_t{1} << w;
  }
  return adj;
}

/// Running minimum of num/den over subsets with the documented tie-break.
class SubsetMinimum {
 public:
  void offer(std::uint64_t num, std::uint64_t den, std::uint64_t mask) {
    if (!found_) {
      set(num, den, mask);
      return;
    }
    const auto lhs = num * den_;
    const auto rhs = num_ * den;
    if (lhs < rhs) {
      set(num, den, mask);
    } else if (lhs == rhs) {
      const int size = std::popcount(mask);
      const int best_size = std::popcount(mask_);
      if (size < best_size) {
        set(num, den, mask);
      } else if (size == best_size) {
        // Equal sizes: the set holding the lowest differing vertex has the
        // lexicographically smaller sorted member list.
        const std::uint64_t diff = mask ^ mask_;
        if (diff != 0 && (mask & (diff & (~diff + 1))) != 0) set(num, den, mask);
      }
    }
  }

  bool found() const { return found_; }
  ExactExpansion result(std::size_t n) const {
    return {Rational(static_cast<std::int64_t>(num_), static_cast<std::int64_t>(den_)),
            VertexSubset::from_mask(n, mask_)};
  }

 private:
  void set(std::uint64_t num, std::uint64_t den, std::uint64_t mask) {
    num_ = num;
    den_ = den;
    mask_ = mask;
    found_ = true;
  }

  bool found_ = false;
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
  std::uint64_t mask_ = 0;
};

}  // namespace

ExactExpansion cheeger_exact(const Graph& g, std::size_t max_n) {
  check_exact_size(g, 3, max_n);
  const std::size_t n = g.num_vertices();

  std::size_t components = 0;
  const auto label = component_labels(g, &components);
  if (components > 1) {
    std::vector<std::size_t> sizes(components, 0);
    for (std::size_t c : label) ++sizes[c];
    const auto smallest = static_cast<std::size_t>(
        std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v) {
      if (label[v] == smallest) members.push_back(v);
    }
    return {Rational(0), VertexSubset(n, std::move(members))};
  }

  // Split masks into low and high halves so N(S) = nb_lo[lo] | nb_hi[hi].
  const auto adj = neighbor_masks(g);
  const std::size_t lo_bits = n / 2;
  const std::size_t hi_bits = n - lo_bits;
  auto table = [&](std::size_t bits, std::size_t offset) {
    std::vector<std::uint64_t> nb(std::size_t{1} << bits, 0);
    for (std::uint64_t s = 1; s < nb.size(); ++s) {
      const int low = std::countr_zero(s);
      nb[s] = nb[s & (s - 1)] | adj[offset + static_cast<std::size_t>(low)];
    }
    return nb;
  };
  const auto nb_lo = table(lo_bits, 0);
  const auto nb_hi = table(hi_bits, lo_bits);

  SubsetMinimum best;
  for (std::uint64_t hi = 0; hi < nb_hi.size(); ++hi) {
    const int hi_size = std::popcount(hi);
    if (2 * static_cast<std::size_t>(hi_size) >= n) continue;
    for (std::uint64_t lo = 0; lo < nb_lo.size(); ++lo) {
      const auto size = static_cast<std::size_t>(hi_size + std::popcount(lo));
      if (size == 0 || 2 * size >= n) continue;
      const std::uint64_t s = (hi << lo_bits) | lo;
      const auto boundary = static_cast<std::uint64_t>(std::popcount((nb_lo[lo] | nb_hi[hi]) & ~s));
      best.offer(boundary, size, s);
    }
  }
  return best.result(n);
}

ExactExpansion conductance_exact(const Graph& g, std::size_t max_n) {
  check_exact_size(g, 2, max_n);
  if (!is_connected(g)) throw InvalidInput("conductance needs a connected graph");
  const std::size_t n = g.num_vertices();
  const auto adj = neighbor_masks(g);
  const std::uint64_t total_volume = 2 * g.num_edges();

  SubsetMinimum best;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t s = 1; s <= full; ++s) {
    std::uint64_t volume = 0;
    std::uint64_t cut = 0;
    for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      volume += static_cast<std::uint64_t>(std::popcount(adj[v]));
      cut += static_cast<std::uint64_t>(std::popcount(adj[v] & ~s));
    }
    if (2 * volume > total_volume) continue;
    best.offer(cut, volume, s);
  }
  return best.result(n);
}

Girth girth(const Graph& g) {
  auto search = detail::make_cycle_search(g.num_vertices(),
                                          [&g](Vertex v) { return g.neighbors(v); });
  if (auto c = search.shortest()) return c->length;
  return std::nullopt;
}

Diameter diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (Distance d : bfs_distances(g, v)) {
      if (d == kUnreachable) return std::nullopt;
      best = std::max(best, static_cast<std::size_t>(d));
    }
  }
  return best;
}

BallProfile ball_expansion_profile(const Graph& g, std::size_t radius, std::size_t exact_limit,
                                   const SpectrumOptions& options) {
  if (radius == 0) throw InvalidInput("ball radius must be at least 1");
  BallProfile profile;
  profile.radius = radius;
  std::vector<double> gaps;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto ball = induced_ball(g, v, radius);
    BallRow row;
    row.center = v;
    row.ball_size = ball.graph.num_vertices();
    if (row.ball_size >= 2) {
      row.gap = spectrum(ball.graph, options).gap;
      gaps.push_back(*row.gap);
    }
    if (row.ball_size >= 3 && row.ball_size <= exact_limit) {
      row.h_exact = cheeger_exact(ball.graph, exact_limit).value;
      if (!profile.min_h_exact || *row.h_exact < *profile.min_h_exact) {
        profile.min_h_exact = row.h_exact;
      }
    }
    profile.rows.push_back(row);
  }
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    profile.min_gap = gaps.front();
    const std::size_t mid = gaps.size() / 2;
    profile.median_gap = gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
  }
  return profile;
}

MetricsReport measure(const Graph& g, std::size_t exact_limit, const SpectrumOptions& options) {
  MetricsReport r;
  r.n = g.num_vertices();
  r.m = g.num_edges();
  r.max_degree = g.max_degree();
  const bool connected = is_connected(g);
  if (r.n >= 3 && r.n <= exact_limit) r.h_exact = cheeger_exact(g, exact_limit).value;
  if (connected && r.n >= 2) {
    if (r.n <= exact_limit) r.conductance_exact = conductance_exact(g, exact_limit).value;
    const Spectrum s = spectrum(g, options);
    r.lambda2 = s.lambda2;
    r.rho_star = s.rho_star;
    r.gap = s.gap;
  }
  r.girth = girth(g);
  r.diameter = connected ? diameter(g) : std::nullopt;
  return r;
}

}  // namespace expander
