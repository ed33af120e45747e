#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "expander/graph.hpp"
#include "expander/metrics.hpp"

namespace expander {

/// Square matrix over Z/qZ, entries always reduced into [0, q).
class ModMatrix {
 public:
  /// Reduces every entry (negative values included) modulo `modulus`.
  ModMatrix(std::size_t dim, std::uint64_t modulus, std::span<const std::int64_t> row_major);
  ModMatrix(std::uint64_t modulus, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static ModMatrix identity(std::size_t dim, std::uint64_t modulus);

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint32_t at(std::size_t row, std::size_t col) const noexcept {
    return entries_[row * dim_ + col];
  }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }

  /// Determinant reduced mod q.
  std::uint64_t det() const;
  bool is_identity() const noexcept;

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  ModMatrix(std::size_t dim, std::uint64_t modulus, std::vector<std::uint32_t> entries)
      : dim_(dim), modulus_(modulus), entries_(std::move(entries)) {}
  friend ModMatrix mat_mul(const ModMatrix&, const ModMatrix&);
  friend ModMatrix mat_inv(const ModMatrix&);
  friend ModMatrix mat_reduce(const ModMatrix&, std::uint64_t);

  std::size_t dim_;
  std::uint64_t modulus_;
  std::vector<std::uint32_t> entries_;
};

/// Throws InvalidInput on a dimension or modulus mismatch.
ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b);
/// Inverse of an SL element via the adjugate; throws InvalidInput ("not in
/// SL") unless det = 1 mod q.
ModMatrix mat_inv(const ModMatrix& a);
/// Entrywise reduction to a divisor of the modulus; a group homomorphism.
ModMatrix mat_reduce(const ModMatrix& a, std::uint64_t new_modulus);

/// Element of SL(m, Z/qZ) x SL(m, Z/qZ).
struct ProductElement {
  ModMatrix left;
  ModMatrix right;

  friend bool operator==(const ProductElement&, const ProductElement&) = default;
};

// Uniform group interface used by the Cayley enumerator.
inline ModMatrix group_mul(const ModMatrix& a, const ModMatrix& b) { return mat_mul(a, b); }
inline ModMatrix group_inv(const ModMatrix& a) { return mat_inv(a); }
inline bool group_is_identity(const ModMatrix& a) { return a.is_identity(); }
inline ModMatrix group_identity(const ModMatrix& like) {
  return ModMatrix::identity(like.dim(), like.modulus());
}

ProductElement group_mul(const ProductElement& a, const ProductElement& b);
ProductElement group_inv(const ProductElement& a);
bool group_is_identity(const ProductElement& a);
ProductElement group_identity(const ProductElement& like);

struct GroupElementHash {
  std::size_t operator()(const ModMatrix& a) const noexcept;
  std::size_t operator()(const ProductElement& a) const noexcept;
};

/// A generating set. `core` holds the generators as given; `elements` is the
/// symmetric closure used for Cayley graphs: core followed by missing
/// inverses, identity dropped, duplicates removed, first occurrence kept.
template <class Element>
struct GeneratorSet {
  std::vector<Element> core;
  std::vector<Element> elements;
  bool symmetric = true;
};

template <class Element>
GeneratorSet<Element> symmetrize(std::vector<Element> core) {
  GeneratorSet<Element> out;
  auto add = [&out](const Element& e) {
    if (group_is_identity(e)) return;
    for (const Element& x : out.elements) {
      if (x == e) return;
    }
    out.elements.push_back(e);
  };
  for (const Element& e : core) add(e);
  for (const Element& e : core) add(group_inv(e));
  out.core = std::move(core);
  out.symmetric = true;
  return out;
}

/// {[[1,2],[0,1]], [[1,0],[2,1]]} mod q and inverses; needs q >= 3.
GeneratorSet<ModMatrix> sanov_generators(std::uint64_t q);
/// {[[1,1],[0,1]], [[1,0],[1,1]]} mod q and inverses; needs q >= 2.
GeneratorSet<ModMatrix> elementary_generators(std::uint64_t q);

enum class Pairing { Diagonal, Twisted, Mixed };

std::string_view to_string(Pairing p) noexcept;
Pairing parse_pairing(std::string_view name);

/// All non-identity products of exactly `exponent` elements of gens.elements,
/// in lexicographic word order. Neighbors in the resulting Cayley graph are
/// within distance `exponent` in the original one.
GeneratorSet<ModMatrix> word_power_generators(const GeneratorSet<ModMatrix>& gens,
                                              std::size_t exponent = 2);

/// Generators of the product group built from the first two core elements
/// a, b: diagonal {(a,a),(b,b)}, twisted {(a,b),(b,a)}, mixed {(a,b),(b,ab)}.
/// Generation of the full product is not guaranteed; compare reached orders.
GeneratorSet<ProductElement> product_generators(const GeneratorSet<ModMatrix>& gens,
                                                Pairing pairing = Pairing::Twisted);

/// Order of SL(2, Z/qZ) when q is a prime power p^k: p^{3(k-1)} p (p^2 - 1).
std::optional<std::uint64_t> sl2_order(std::uint64_t q);

/// If q = p^k for a prime p, returns {p, k}.
std::optional<std::pair<std::uint64_t, std::size_t>> prime_power(std::uint64_t q);

inline constexpr std::size_t kDefaultOrderCap = 2'000'000;

template <class Element>
struct CayleyGraph {
  Graph graph = Graph::empty(1);
  /// Group element of every vertex, in BFS discovery order from the identity.
  std::vector<Element> labels;
  std::size_t reached_order = 0;
  std::optional<std::uint64_t> full_group_order;
};

/// Right Cayley graph: BFS from the identity, vertex g adjacent to g s for
/// every generator s; parallel edges collapse. Throws GroupTooLarge once more
/// than `order_cap` elements are discovered.
CayleyGraph<ModMatrix> cayley_graph(const GeneratorSet<ModMatrix>& gens,
                                    std::size_t order_cap = kDefaultOrderCap);
CayleyGraph<ProductElement> cayley_graph(const GeneratorSet<ProductElement>& gens,
                                         std::size_t order_cap = kDefaultOrderCap);

/// Named generator recipe: "sanov", "elementary", or
/// "product:<pairing>[:<base>]" with base sanov by default.
struct CayleyRecipe {
  enum class Base { Sanov, Elementary };
  Base base = Base::Elementary;
  std::optional<Pairing> pairing;  ///< set for product recipes

  static CayleyRecipe parse(std::string_view text);
  std::string to_string() const;
};

/// A Cayley graph with its labels flattened for serialization.
struct CayleyInstance {
  Graph graph = Graph::empty(1);
  std::size_t dim = 2;
  std::uint64_t modulus = 0;
  std::size_t factors = 1;  ///< 2 for product groups
  /// Per vertex: row-major entries of each factor, left factor first.
  std::vector<std::vector<std::uint32_t>> labels;
  std::size_t reached_order = 0;
  std::optional<std::uint64_t> full_group_order;
};

/// `word_power` > 1 replaces the generator set by all nontrivial products of
/// exactly that many generators (not available for product recipes).
CayleyInstance build_cayley(const CayleyRecipe& recipe, std::uint64_t modulus,
                            std::size_t order_cap = kDefaultOrderCap, std::size_t word_power = 1);

/// Label sidecar text: a '#' header, then one line per vertex
/// "index e_1 ... e_k" with entries row-major, left factor first.
std::string format_labels(const CayleyInstance& c);

struct TowerRow {
  std::size_t level = 0;
  std::uint64_t modulus = 0;
  std::size_t vertices = 0;
  std::optional<std::uint64_t> group_order;
  std::size_t degree = 0;
  Girth girth;
  double lambda2 = 0.0;
  double gap = 0.0;
};

struct TowerReport {
  std::uint64_t p = 0;
  std::string recipe;
  std::vector<TowerRow> rows;
  /// Girth never decreases from one level to the next.
  bool girth_nondecreasing = true;
};

/// Cayley graphs over Z/p^n Z for n = 1..max_level with girth and gap.
TowerReport girth_tower_report(std::uint64_t p, std::size_t max_level, const CayleyRecipe& recipe,
                               std::size_t order_cap = kDefaultOrderCap,
                               const SpectrumOptions& options = {});

// -- Relation search in SL(2, Z) ---------------------------------------------

/// Letters of a word over k generators: 2i is generator i, 2i + 1 its inverse.
using Word = std::vector<std::size_t>;

struct IntMatrix2 {
  std::int64_t a, b, c, d;
};

/// Integer lifts of the recipes' core generators.
std::vector<IntMatrix2> sanov_lift();
std::vector<IntMatrix2> elementary_lift();

/// Shortest nonempty reduced word of length <= max_length that evaluates to
/// the identity in SL(2, Z), computed with arbitrary-precision integers.
/// Generators must have determinant 1.
std::optional<Word> find_relation(std::span<const IntMatrix2> generators,
                                  std::size_t max_length = 12);

}  // namespace expander
