#include <gtest/gtest.h>

#include <random>

#include "expander/errors.hpp"
#include "expander/matrix_group.hpp"
#include "expander/metrics.hpp"

using namespace expander;

namespace {

// Random SL(2, q) element as a product of random elementary generators.
ModMatrix random_element(std::uint64_t q, std::mt19937_64& rng) {
  const auto gens = elementary_generators(q).elements;
  ModMatrix x = ModMatrix::identity(2, q);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int i = 0; i < 40; ++i) x = mat_mul(x, gens[pick(rng)]);
  return x;
}

std::uint64_t count_sl2_brute(std::uint64_t q) {
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      for (std::uint64_t c = 0; c < q; ++c)
        for (std::uint64_t d = 0; d < q; ++d) count += (a * d + q * q - b * c) % q == 1 % q;
  return count;
}

IntMatrix2 int_mul(const IntMatrix2& x, const IntMatrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

}  // namespace

TEST(ModMatrixTest, GroupLawsOnRandomTriples) {
  std::mt19937_64 rng(21);
  for (std::uint64_t q : {3, 5, 9, 25, 27}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const ModMatrix a = random_element(q, rng);
      const ModMatrix b = random_element(q, rng);
      const ModMatrix c = random_element(q, rng);
      ASSERT_EQ(a.det(), 1u);
      ASSERT_EQ(mat_mul(mat_mul(a, b), c), mat_mul(a, mat_mul(b, c)));
      ASSERT_TRUE(mat_mul(a, mat_inv(a)).is_identity());
      ASSERT_TRUE(mat_mul(mat_inv(a), a).is_identity());
      ASSERT_EQ(mat_mul(a, ModMatrix::identity(2, q)), a);
    }
  }
}

TEST(ModMatrixTest, ReductionIsAHomomorphism) {
  std::mt19937_64 rng(22);
  for (auto [q, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{9, 3}, {27, 9}, {25, 5}}) {
    for (int trial = 0; trial < 200; ++trial) {
      const ModMatrix a = random_element(q, rng);
      const ModMatrix b = random_element(q, rng);
      EXPECT_EQ(mat_reduce(mat_mul(a, b), r), mat_mul(mat_reduce(a, r), mat_reduce(b, r)));
    }
  }
  EXPECT_THROW(mat_reduce(ModMatrix::identity(2, 9), 4), InvalidInput);
}

TEST(ModMatrixTest, Validation) {
  EXPECT_THROW(mat_inv(ModMatrix(5, {{2, 0}, {0, 1}})), InvalidInput);
  EXPECT_THROW(mat_mul(ModMatrix::identity(2, 5), ModMatrix::identity(2, 7)), InvalidInput);
  EXPECT_THROW(ModMatrix::identity(2, 1), InvalidInput);
  EXPECT_EQ(ModMatrix(5, {{-1, 7}, {0, 6}}), ModMatrix(5, {{4, 2}, {0, 1}}));
  const ModMatrix m3(7, {{2, 1, 0}, {0, 4, 0}, {0, 0, 1}});
  EXPECT_EQ(m3.det(), 1u);
  EXPECT_TRUE(mat_mul(m3, mat_inv(m3)).is_identity());
}

TEST(Sl2Order, FormulaMatchesBruteCount) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) EXPECT_EQ(sl2_order(q), count_sl2_brute(q)) << q;
  EXPECT_FALSE(sl2_order(6).has_value());
}

TEST(CayleyGraphTest, ElementaryGeneratesAllOfSl2) {
  for (std::uint64_t q : {3, 4, 5, 7, 9}) {
    const auto c = cayley_graph(elementary_generators(q));
    EXPECT_EQ(c.graph.num_vertices(), count_sl2_brute(q)) << q;
    EXPECT_EQ(c.full_group_order, sl2_order(q));
    const std::size_t deg = elementary_generators(q).elements.size();
    for (Vertex v = 0; v < c.graph.num_vertices(); ++v) ASSERT_EQ(c.graph.degree(v), deg);
    EXPECT_TRUE(c.labels.front().is_identity());
    EXPECT_TRUE(is_connected(c.graph));
  }
}

TEST(CayleyGraphTest, EdgesAreRightMultiplication) {
  const auto gens = sanov_generators(5);
  const auto c = cayley_graph(gens);
  for (const Edge& e : c.graph.edges()) {
    bool found = false;
    for (const ModMatrix& s : gens.elements) {
      found = found || mat_mul(c.labels[e.u], s) == c.labels[e.v];
    }
    EXPECT_TRUE(found);
  }
}

TEST(CayleyGraphTest, SanovLevelOrders) {
  EXPECT_EQ(cayley_graph(sanov_generators(3)).graph.num_vertices(), 24u);
  EXPECT_EQ(cayley_graph(sanov_generators(9)).graph.num_vertices(), 648u);
  EXPECT_THROW(sanov_generators(2), InvalidInput);
}

TEST(CayleyGraphTest, OrderCapThrowsWithPartialCount) {
  try {
    cayley_graph(elementary_generators(7), 100);
    FAIL() << "expected GroupTooLarge";
  } catch (const GroupTooLarge& e) {
    EXPECT_GT(e.partial_count(), 100u);
  }
}

TEST(CayleyGraphTest, RejectsNonSymmetricSets) {
  GeneratorSet<ModMatrix> g;
  g.elements = {ModMatrix(5, {{1, 1}, {0, 1}})};
  g.core = g.elements;
  EXPECT_THROW(cayley_graph(g), InvalidInput);
}

TEST(Products, DiagonalPairingIsTheDiagonalSubgroup) {
  const auto c = cayley_graph(product_generators(sanov_generators(3), Pairing::Diagonal));
  EXPECT_EQ(c.graph.num_vertices(), 24u);
  EXPECT_EQ(c.full_group_order, 24u * 24u);
}

TEST(Products, TwistedPairingIsRegular) {
  const auto gens = product_generators(sanov_generators(3), Pairing::Twisted);
  const auto c = cayley_graph(gens);
  EXPECT_LE(c.graph.num_vertices(), 24u * 24u);
  EXPECT_EQ(c.graph.num_vertices() % 24, 0u);
  for (Vertex v = 0; v < c.graph.num_vertices(); ++v) {
    ASSERT_EQ(c.graph.degree(v), gens.elements.size());
  }
}

TEST(WordPowers, SquareOfElementarySet) {
  const auto base = elementary_generators(5);
  const auto sq = word_power_generators(base, 2);
  for (const ModMatrix& x : sq.elements) {
    EXPECT_FALSE(x.is_identity());
    bool is_product = false;
    for (const ModMatrix& a : base.elements)
      for (const ModMatrix& b : base.elements) is_product = is_product || mat_mul(a, b) == x;
    EXPECT_TRUE(is_product);
    bool has_inverse = false;
    for (const ModMatrix& y : sq.elements) has_inverse = has_inverse || y == mat_inv(x);
    EXPECT_TRUE(has_inverse);
  }
}

TEST(Recipes, ParseAndPrint) {
  EXPECT_EQ(CayleyRecipe::parse("sanov").to_string(), "sanov");
  EXPECT_EQ(CayleyRecipe::parse("product:twisted").to_string(), "product:twisted");
  EXPECT_EQ(CayleyRecipe::parse("product:mixed:elementary").to_string(),
            "product:mixed:elementary");
  EXPECT_THROW(CayleyRecipe::parse("free"), UsageError);
  EXPECT_THROW(CayleyRecipe::parse("product:sideways"), UsageError);
}

TEST(Recipes, BuildAndLabels) {
  const CayleyInstance c = build_cayley(CayleyRecipe::parse("elementary"), 3);
  EXPECT_EQ(c.graph.num_vertices(), 24u);
  const std::string text = format_labels(c);
  EXPECT_EQ(text.substr(0, text.find('\n')), "# dim 2 modulus 3 factors 1");
  EXPECT_NE(text.find("\n0 1 0 0 1\n"), std::string::npos);
}

TEST(Tower, SanovTwoLevels) {
  const TowerReport r = girth_tower_report(3, 2, CayleyRecipe::parse("sanov"));
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].vertices, 24u);
  EXPECT_EQ(r.rows[1].vertices, 648u);
  EXPECT_EQ(r.rows[1].group_order, 648u);
  EXPECT_TRUE(r.girth_nondecreasing);
  for (const TowerRow& row : r.rows) EXPECT_GT(row.gap, 0.0);
  EXPECT_THROW(girth_tower_report(9, 1, CayleyRecipe::parse("sanov")), InvalidInput);
}

TEST(Relations, ElementaryHasOneSanovHasNone) {
  const auto elementary = elementary_lift();
  const auto rel = find_relation(elementary);
  ASSERT_TRUE(rel.has_value());
  IntMatrix2 x{1, 0, 0, 1};
  for (std::size_t letter : *rel) {
    const IntMatrix2& g = elementary[letter / 2];
    x = int_mul(x, letter % 2 ? IntMatrix2{g.d, -g.b, -g.c, g.a} : g);
  }
  EXPECT_EQ(x.a, 1);
  EXPECT_EQ(x.b, 0);
  EXPECT_EQ(x.c, 0);
  EXPECT_EQ(x.d, 1);
  for (std::size_t i = 1; i < rel->size(); ++i) EXPECT_NE((*rel)[i], (*rel)[i - 1] ^ 1U);
  const auto sanov = sanov_lift();
  EXPECT_FALSE(find_relation(sanov, 10).has_value());
}
