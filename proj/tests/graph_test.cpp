#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "expander/builders.hpp"
#include "expander/errors.hpp"
#include "expander/graph.hpp"
#include "expander/graph_io.hpp"
#include "oracles.hpp"

using namespace expander;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph::from_edges(n, e);
}

}  // namespace

TEST(Graph, RejectsMalformedEdgeSets) {
  const std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(Graph::from_edges(3, loop), InvalidInput);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  EXPECT_THROW(Graph::from_edges(3, dup), InvalidInput);
  const std::vector<Edge> range{{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, range), InvalidInput);
  EXPECT_THROW(Graph::empty(0), InvalidInput);
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_connected(15, 20, rng);
    std::size_t degree_sum = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const auto nb = g.neighbors(v);
      degree_sum += nb.size();
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      for (Vertex w : nb) EXPECT_TRUE(g.has_edge(w, v));
    }
    EXPECT_EQ(degree_sum, 2 * g.num_edges());
    EXPECT_EQ(Graph::from_edge_list(g.to_edge_list()), g);
  }
}

TEST(Graph, BfsMatchesFloydWarshall) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::random_connected(12, trial % 6, rng);
    const auto d = oracle::all_pairs(g);
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
      const auto got = bfs_distances(g, s);
      for (Vertex t = 0; t < g.num_vertices(); ++t) {
        EXPECT_EQ(static_cast<std::size_t>(got[t]), d[s][t]);
      }
    }
  }
}

TEST(Graph, UnreachableSentinelAndComponents) {
  const std::vector<Edge> e{{0, 1}, {2, 3}};
  const Graph g = Graph::from_edges(5, e);
  const auto d = bfs_distances(g, 0);
  EXPECT_EQ(d[1], 1);
  EXPECT_EQ(d[2], kUnreachable);
  std::size_t count = 0;
  const auto labels = component_labels(g, &count);
  EXPECT_EQ(count, 3u);
  EXPECT_EQ(labels[0], labels[1]);
  EXPECT_NE(labels[1], labels[2]);
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(is_connected(Graph::empty(1)));
}

TEST(Graph, InducedBallOnCycle) {
  const Graph c = cycle_graph(10);
  const InducedSubgraph ball = induced_ball(c, 0, 2);
  EXPECT_EQ(ball.graph.num_vertices(), 5u);
  EXPECT_EQ(ball.graph.num_edges(), 4u);  // a path P5
  EXPECT_EQ(ball.new_to_old, (std::vector<Vertex>{0, 1, 2, 8, 9}));
  EXPECT_EQ(ball.old_to_new(9), Vertex{4});
  EXPECT_FALSE(ball.old_to_new(5).has_value());
}

TEST(Graph, InducedSubgraphKeepsInternalEdges) {
  const Graph k = complete_graph(6);
  const InducedSubgraph sub = induced_subgraph(k, VertexSubset(6, {1, 3, 4}));
  EXPECT_EQ(sub.graph.num_edges(), 3u);
  EXPECT_THROW(induced_subgraph(k, VertexSubset(5, {1})), InvalidInput);
}

TEST(Graph, EdgeSubgraphRejectsForeignEdges) {
  const Graph p = path(4);
  const std::vector<Edge> ok{{0, 1}};
  EXPECT_EQ(edge_subgraph(p, ok).num_edges(), 1u);
  const std::vector<Edge> bad{{0, 2}};
  EXPECT_THROW(edge_subgraph(p, bad), InvalidInput);
}

TEST(VertexSubsetTest, MaskRoundTrip) {
  const VertexSubset s = VertexSubset::from_mask(8, 0b10100101);
  EXPECT_EQ(s.members(), (std::vector<Vertex>{0, 2, 5, 7}));
  EXPECT_EQ(s.mask(), 0b10100101u);
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(4));
}

TEST(EdgeListIo, RoundTripIsByteExact) {
  const Graph g = petersen_graph();
  const std::string text = format_edge_list(g.to_edge_list());
  EXPECT_EQ(text.substr(0, 6), "10 15\n");
  const EdgeList back = parse_edge_list(text);
  EXPECT_EQ(format_edge_list(back), text);
  EXPECT_EQ(Graph::from_edge_list(back), g);
}

TEST(EdgeListIo, CommentsAndBlankLinesAreSkipped) {
  const EdgeList el = parse_edge_list("# a triangle\n3 3\n\n0 1\n# middle\n0 2\n1 2\n");
  EXPECT_EQ(el.n, 3u);
  EXPECT_EQ(el.edges.size(), 3u);
}

TEST(EdgeListIo, ErrorsCarryLineNumbers) {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_edge_list(text);
    } catch (const FormatError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("3 2\n0 1\n2 1\n"), 3u);    // u > v
  EXPECT_EQ(line_of("3 1\n0 1\n0 2\n"), 3u);    // too many edges
  EXPECT_EQ(line_of("3 2\n0 x\n"), 2u);         // not an integer
  EXPECT_EQ(line_of("3 1\n0 5\n"), 2u);         // out of range
  EXPECT_EQ(line_of("# c\n3 2\n0 1\n"), 3u);    // count mismatch at EOF
  EXPECT_EQ(line_of("3  1\n0 1\n"), 1u);        // two spaces
  EXPECT_THROW(Graph::from_edge_list(parse_edge_list("3 2\n0 1\n0 1\n")), InvalidInput);
}
