#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "expander/builders.hpp"
#include "expander/errors.hpp"
#include "expander/percolation.hpp"

using namespace expander;

TEST(Percolation, EdgeMarginalsMatchP) {
  const Graph g = cycle_graph(12);
  const std::size_t draws = 10'000;
  for (double p : {0.1, 0.37, 0.5, 0.9}) {
    std::vector<std::size_t> hits(g.num_edges(), 0);
    const auto edges = g.edges();
    for (std::size_t s = 0; s < draws; ++s) {
      for (const Edge& e : percolate(g, p, s).retained) {
        hits[std::lower_bound(edges.begin(), edges.end(), e) - edges.begin()]++;
      }
    }
    const double sigma = std::sqrt(p * (1 - p) / draws);
    for (std::size_t h : hits) EXPECT_NEAR(static_cast<double>(h) / draws, p, 4 * sigma);
  }
}

TEST(Percolation, ThresholdCouplingIsMonotone) {
  const Graph g = random_regular(100, 4, 3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::vector<Edge> previous;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      const auto now = percolate(g, p, seed).retained;
      EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
      previous = now;
    }
  }
}

TEST(Percolation, Endpoints) {
  const Graph g = petersen_graph();
  EXPECT_TRUE(percolate(g, 0.0, 9).retained.empty());
  EXPECT_EQ(percolate(g, 1.0, 9).retained, g.edges());
  EXPECT_THROW(percolate(g, 1.5, 0), InvalidInput);
  EXPECT_THROW(percolate(g, -0.1, 0), InvalidInput);
}

TEST(Percolation, ComponentSummaries) {
  const Graph g = cycle_graph(10);
  const auto full = component_summary(g, percolate(g, 1.0, 0));
  EXPECT_EQ(full.count, 1u);
  EXPECT_DOUBLE_EQ(full.giant_fraction, 1.0);
  const auto none = component_summary(g, percolate(g, 0.0, 0));
  EXPECT_EQ(none.count, 10u);
  EXPECT_DOUBLE_EQ(none.giant_fraction, 0.1);
  const auto sample = percolate(g, 0.5, 4);
  EXPECT_THROW(component_summary(cycle_graph(11), sample), InvalidInput);
  const auto s = component_summary(g, sample);
  EXPECT_TRUE(std::is_sorted(s.sizes.rbegin(), s.sizes.rend()));
  std::size_t total = 0;
  for (std::size_t x : s.sizes) total += x;
  EXPECT_EQ(total, 10u);
}

TEST(Percolation, ConditionCheckClosedForms) {
  EXPECT_NEAR(condition_check(complete_graph(4), 0.5).value, 1.0 / 3.0 * 3 * 0.5, 1e-9);
  EXPECT_NEAR(condition_check(cycle_graph(4), 0.4).value, 1.0 * 2 * 0.4, 1e-9);
  EXPECT_TRUE(condition_check(cycle_graph(4), 0.4).satisfied);
  EXPECT_FALSE(condition_check(cycle_graph(4), 0.5).satisfied);
}

TEST(Percolation, SweepSharesSeedsAcrossGrid) {
  const Graph g = random_regular(200, 3, 1);
  const std::vector<double> grid{0.0, 0.3, 0.6, 1.0};
  const auto rows = percolation_sweep(g, grid, 20, 5, true);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_DOUBLE_EQ(rows.front().giant_mean, 1.0 / 200);
  EXPECT_DOUBLE_EQ(rows.front().giant_std, 0.0);
  EXPECT_DOUBLE_EQ(rows.back().giant_mean, 1.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].giant_mean, rows[i - 1].giant_mean);  // coupled samples
  }
  const Spectrum s = spectrum(g);
  EXPECT_NEAR(rows[2].condition->value, s.rho_star * 3 * 0.6, 1e-9);
  const std::string csv = format_sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "p,seed_count,giant_mean,giant_std,condition_value,condition_ok");
  EXPECT_EQ(csv, format_sweep_csv(percolation_sweep(g, grid, 20, 5, true)));
  EXPECT_THROW(percolation_sweep(g, std::vector<double>{}, 2, 0, false), InvalidInput);
}
