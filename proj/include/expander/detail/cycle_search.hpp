#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "expander/graph.hpp"

namespace expander::detail {

/// A non-tree edge (u, w) met by BFS from root; closes a walk of `length`.
struct ClosingEdge {
  std::size_t length = 0;
  Vertex root = 0;
  Vertex u = 0;
  Vertex w = 0;
};

inline constexpr std::size_t kNoBound = std::numeric_limits<std::size_t>::max();

/// Truncated-BFS cycle detection over any adjacency exposed as
/// `neighbors(v) -> range of Vertex`. Workspace is reused across roots.
template <class Neighbors>
class CycleSearch {
 public:
  CycleSearch(std::size_t n, Neighbors neighbors)
      : neighbors_(std::move(neighbors)), dist_(n, kUnreachable), parent_(n, 0) {
    queue_.reserve(n);
  }

  /// Shortest closing edge from `root` with length < bound, first in BFS order.
  std::optional<ClosingEdge> from_root(Vertex root, std::size_t bound) {
    for (Vertex v : queue_) dist_[v] = kUnreachable;
    queue_.clear();
    dist_[root] = 0;
    parent_[root] = root;
    queue_.push_back(root);
    std::optional<ClosingEdge> best;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex u = queue_[head];
      const auto du = static_cast<std::size_t>(dist_[u]);
      // Anything closed from here on has length >= 2 du + 1.
      if (2 * du + 1 >= bound) break;
      for (Vertex w : neighbors_(u)) {
        if (dist_[w] == kUnreachable) {
          dist_[w] = dist_[u] + 1;
          parent_[w] = u;
          queue_.push_back(w);
        } else if (w != parent_[u]) {
          const std::size_t len = du + static_cast<std::size_t>(dist_[w]) + 1;
          if (len < bound) {
            bound = len;
            best = ClosingEdge{len, root, u, w};
          }
        }
      }
    }
    return best;
  }

  /// Shortest closing edge over all roots, smallest root first. `lower` is a
  /// known lower bound on the girth; a closure of that length ends the scan.
  std::optional<ClosingEdge> shortest(std::size_t bound = kNoBound, std::size_t lower = 3) {
    std::optional<ClosingEdge> best;
    for (Vertex root = 0; root < dist_.size(); ++root) {
      if (auto c = from_root(root, bound)) {
        bound = c->length;
        best = c;
        if (bound <= lower) break;
      }
    }
    return best;
  }

  /// Vertex sequence of the cycle closed by `c`: root .. u, then w .. back
  /// towards root. Reruns the BFS for c.root.
  std::vector<Vertex> cycle(const ClosingEdge& c) {
    from_root(c.root, c.length + 1);
    std::vector<Vertex> left;
    for (Vertex v = c.u; v != c.root; v = parent_[v]) left.push_back(v);
    left.push_back(c.root);
    std::vector<Vertex> out(left.rbegin(), left.rend());
    for (Vertex v = c.w; v != c.root; v = parent_[v]) out.push_back(v);
    return out;
  }

 private:
  Neighbors neighbors_;
  std::vector<Distance> dist_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> queue_;
};

template <class Neighbors>
CycleSearch<Neighbors> make_cycle_search(std::size_t n, Neighbors neighbors) {
  return CycleSearch<Neighbors>(n, std::move(neighbors));
}

}  // namespace expander::detail
