#include "expander/matrix_group.hpp"

#include <algorithm>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "expander/errors.hpp"

namespace expander {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

void check_modulus(std::uint64_t q) {
  if (q < 2 || q > kMaxModulus) {
    throw InvalidInput("modulus must lie in [2, 2^31], got " + std::to_string(q));
  }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) { return a * b % q; }

// Determinant of the square submatrix picked by `rows` x `cols`, mod q, by
// cofactor expansion along the first selected row. Dimensions stay small.
std::uint64_t minor_det(std::span<const std::uint32_t> e, std::size_t dim, std::uint64_t q,
                        std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return e[rows[0] * dim + cols[0]] % q;
  if (k == 2) {
    const std::uint64_t ad = mul_mod(e[rows[0] * dim + cols[0]], e[rows[1] * dim + cols[1]], q);
    const std::uint64_t bc = mul_mod(e[rows[0] * dim + cols[1]], e[rows[1] * dim + cols[0]], q);
    return (ad + q - bc) % q;
  }
  const std::size_t r0 = rows.front();
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(k - 1);
    for (std::size_t t = 0; t < k; ++t) {
      if (t != j) sub_cols.push_back(cols[t]);
    }
    const std::uint64_t term =
        mul_mod(e[r0 * dim + cols[j]], minor_det(e, dim, q, sub_rows, sub_cols), q);
    acc = j % 2 == 0 ? (acc + term) % q : (acc + q - term) % q;
  }
  return acc;
}

std::vector<std::size_t> iota_except(std::size_t dim, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i != skip) out.push_back(i);
  }
  return out;
}

std::vector<std::uint32_t> reduce_entries(std::span<const std::int64_t> values, std::uint64_t q) {
  std::vector<std::uint32_t> out;
  out.reserve(values.size());
  const auto sq = static_cast<std::int64_t>(q);
  for (std::int64_t x : values) out.push_back(static_cast<std::uint32_t>(((x % sq) + sq) % sq));
  return out;
}

template <class Element>
CayleyGraph<Element> enumerate_cayley(const GeneratorSet<Element>& gens, std::size_t order_cap) {
  if (gens.elements.empty()) throw InvalidInput("Cayley graph needs a nonempty generator set");
  for (const Element& s : gens.elements) {
    if (group_is_identity(s)) throw InvalidInput("generator set contains the identity");
    const Element inv = group_inv(s);
    if (std::find(gens.elements.begin(), gens.elements.end(), inv) == gens.elements.end()) {
      throw InvalidInput("generator set is not closed under inverses");
    }
  }

  CayleyGraph<Element> out;
  std::unordered_map<Element, Vertex, GroupElementHash> index;
  out.labels.push_back(group_identity(gens.elements.front()));
  index.emplace(out.labels.front(), 0);
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < out.labels.size(); ++head) {
    for (const Element& s : gens.elements) {
      Element next = group_mul(out.labels[head], s);
      auto [it, inserted] = index.try_emplace(next, static_cast<Vertex>(out.labels.size()));
      if (inserted) {
        if (out.labels.size() >= order_cap) throw GroupTooLarge(out.labels.size() + 1, order_cap);
        out.labels.push_back(std::move(next));
      }
      const auto u = static_cast<Vertex>(head);
      if (u < it->second) edges.push_back({u, it->second});
    }
  }
  // An involution or an s / s^-1 pair produces the same edge twice.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Graph::from_edges(out.labels.size(), edges);
  out.reached_order = out.labels.size();
  return out;
}

}  // namespace

ModMatrix::ModMatrix(std::size_t dim, std::uint64_t modulus, std::span<const std::int64_t> row_major)
    : dim_(dim), modulus_(modulus) {
  check_modulus(modulus);
  if (dim < 1 || row_major.size() != dim * dim) {
    throw InvalidInput("matrix needs dim^2 entries with dim >= 1");
  }
  entries_ = reduce_entries(row_major, modulus);
}

ModMatrix::ModMatrix(std::uint64_t modulus,
                     std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : dim_(rows.size()), modulus_(modulus) {
  check_modulus(modulus);
  std::vector<std::int64_t> flat;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw InvalidInput("matrix rows must all have length dim");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  entries_ = reduce_entries(flat, modulus);
}

ModMatrix ModMatrix::identity(std::size_t dim, std::uint64_t modulus) {
  check_modulus(modulus);
  std::vector<std::uint32_t> e(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1;
  return ModMatrix(dim, modulus, std::move(e));
}

std::uint64_t ModMatrix::det() const {
  auto rows = iota_except(dim_, dim_);
  auto cols = rows;
  return minor_det(entries_, dim_, modulus_, rows, cols);
}

bool ModMatrix::is_identity() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (entries_[i * dim_ + j] != (i == j ? 1U : 0U)) return false;
    }
  }
  return true;
}

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b) {
  if (a.modulus_ != b.modulus_) {
    throw InvalidInput("modulus mismatch: " + std::to_string(a.modulus_) + " vs " +
                       std::to_string(b.modulus_));
  }
  if (a.dim_ != b.dim_) throw InvalidInput("dimension mismatch");
  const std::size_t m = a.dim_;
  const std::uint64_t q = a.modulus_;
  std::vector<std::uint32_t> out(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < m; ++k) {
        acc = (acc + std::uint64_t{a.entries_[i * m + k]} * b.entries_[k * m + j]) % q;
      }
      out[i * m + j] = static_cast<std::uint32_t>(acc);
    }
  }
  return ModMatrix(m, q, std::move(out));
}

ModMatrix mat_inv(const ModMatrix& a) {
  if (a.det() != 1) throw InvalidInput("not in SL: determinant is " + std::to_string(a.det()));
  const std::size_t m = a.dim_;
  const std::uint64_t q = a.modulus_;
  std::vector<std::uint32_t> out(m * m);
  if (m == 1) {
    out[0] = 1;
    return ModMatrix(m, q, std::move(out));
  }
  // inverse = adjugate, adj(A)_{ij} = (-1)^{i+j} det(A without row j, column i)
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto rows = iota_except(m, j);
      auto cols = iota_except(m, i);
      const std::uint64_t minor = minor_det(a.entries_, m, q, rows, cols);
      out[i * m + j] = static_cast<std::uint32_t>((i + j) % 2 == 0 ? minor : (q - minor) % q);
    }
  }
  return ModMatrix(m, q, std::move(out));
}

ModMatrix mat_reduce(const ModMatrix& a, std::uint64_t new_modulus) {
  if (new_modulus < 2 || a.modulus_ % new_modulus != 0) {
    throw InvalidInput(std::to_string(new_modulus) + " does not divide the modulus " +
                       std::to_string(a.modulus_));
  }
  std::vector<std::uint32_t> out(a.entries_.size());
  std::transform(a.entries_.begin(), a.entries_.end(), out.begin(),
                 [&](std::uint32_t x) { return static_cast<std::uint32_t>(x % new_modulus); });
  return ModMatrix(a.dim_, new_modulus, std::move(out));
}

ProductElement group_mul(const ProductElement& a, const ProductElement& b) {
  return {mat_mul(a.left, b.left), mat_mul(a.right, b.right)};
}

ProductElement group_inv(const ProductElement& a) { return {mat_inv(a.left), mat_inv(a.right)}; }

bool group_is_identity(const ProductElement& a) {
  return a.left.is_identity() && a.right.is_identity();
}

ProductElement group_identity(const ProductElement& like) {
  return {group_identity(like.left), group_identity(like.right)};
}

std::size_t GroupElementHash::operator()(const ModMatrix& a) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ a.modulus();
  for (std::uint32_t x : a.entries()) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

std::size_t GroupElementHash::operator()(const ProductElement& a) const noexcept {
  return (*this)(a.left) * 31 + (*this)(a.right);
}

GeneratorSet<ModMatrix> sanov_generators(std::uint64_t q) {
  if (q < 3) throw InvalidInput("Sanov generators need q >= 3 (both collapse mod 2)");
  return symmetrize<ModMatrix>({ModMatrix(q, {{1, 2}, {0, 1}}), ModMatrix(q, {{1, 0}, {2, 1}})});
}

GeneratorSet<ModMatrix> elementary_generators(std::uint64_t q) {
  if (q < 2) throw InvalidInput("elementary generators need q >= 2");
  return symmetrize<ModMatrix>({ModMatrix(q, {{1, 1}, {0, 1}}), ModMatrix(q, {{1, 0}, {1, 1}})});
}

std::string_view to_string(Pairing p) noexcept {
  switch (p) {
    case Pairing::Diagonal: return "diagonal";
    case Pairing::Twisted: return "twisted";
    case Pairing::Mixed: return "mixed";
  }
  return "twisted";
}

Pairing parse_pairing(std::string_view name) {
  if (name == "diagonal") return Pairing::Diagonal;
  if (name == "twisted") return Pairing::Twisted;
  if (name == "mixed") return Pairing::Mixed;
  throw UsageError("unknown pairing '" + std::string(name) +
                   "' (expected diagonal, twisted or mixed)");
}

GeneratorSet<ModMatrix> word_power_generators(const GeneratorSet<ModMatrix>& gens,
                                              std::size_t exponent) {
  if (exponent == 0) throw InvalidInput("word power exponent must be at least 1");
  if (gens.elements.empty()) throw InvalidInput("empty generator set");
  std::vector<ModMatrix> layer{group_identity(gens.elements.front())};
  for (std::size_t step = 0; step < exponent; ++step) {
    std::vector<ModMatrix> next;
    for (const ModMatrix& w : layer) {
      for (const ModMatrix& s : gens.elements) {
        ModMatrix x = mat_mul(w, s);
        if (std::find(next.begin(), next.end(), x) == next.end()) next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
  }
  // Products of a symmetric set are closed under inversion already.
  return symmetrize(std::move(layer));
}

GeneratorSet<ProductElement> product_generators(const GeneratorSet<ModMatrix>& gens,
                                                Pairing pairing) {
  if (gens.core.size() < 2) throw InvalidInput("product pairing needs at least 2 core generators");
  const ModMatrix& a = gens.core[0];
  const ModMatrix& b = gens.core[1];
  std::vector<ProductElement> core;
  switch (pairing) {
    case Pairing::Diagonal: core = {{a, a}, {b, b}}; break;
    case Pairing::Twisted: core = {{a, b}, {b, a}}; break;
    case Pairing::Mixed: core = {{a, b}, {b, mat_mul(a, b)}}; break;
  }
  return symmetrize(std::move(core));
}

std::optional<std::pair<std::uint64_t, std::size_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, std::size_t{1});
  std::size_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, k);
}

std::optional<std::uint64_t> sl2_order(std::uint64_t q) {
  const auto pk = prime_power(q);
  if (!pk) return std::nullopt;
  const auto [p, k] = *pk;
  std::uint64_t order = p * (p * p - 1);
  for (std::size_t i = 1; i < k; ++i) order *= p * p * p;
  return order;
}

CayleyGraph<ModMatrix> cayley_graph(const GeneratorSet<ModMatrix>& gens, std::size_t order_cap) {
  auto out = enumerate_cayley(gens, order_cap);
  const ModMatrix& s = gens.elements.front();
  if (s.dim() == 2) out.full_group_order = sl2_order(s.modulus());
  return out;
}

CayleyGraph<ProductElement> cayley_graph(const GeneratorSet<ProductElement>& gens,
                                         std::size_t order_cap) {
  auto out = enumerate_cayley(gens, order_cap);
  const ModMatrix& s = gens.elements.front().left;
  if (s.dim() == 2) {
    if (auto o = sl2_order(s.modulus())) out.full_group_order = *o * *o;
  }
  return out;
}

CayleyRecipe CayleyRecipe::parse(std::string_view text) {
  auto base_of = [](std::string_view name) {
    if (name == "sanov") return Base::Sanov;
    if (name == "elementary") return Base::Elementary;
    throw UsageError("unknown generator recipe '" + std::string(name) +
                     "' (expected sanov, elementary or product:<pairing>)");
  };
  CayleyRecipe r;
  if (text.rfind("product:", 0) == 0) {
    std::string_view rest = text.substr(8);
    const auto colon = rest.find(':');
    r.pairing = parse_pairing(rest.substr(0, colon));
    r.base = colon == std::string_view::npos ? Base::Sanov : base_of(rest.substr(colon + 1));
    return r;
  }
  r.base = base_of(text);
  return r;
}

std::string CayleyRecipe::to_string() const {
  const std::string base_name = base == Base::Sanov ? "sanov" : "elementary";
  if (!pairing) return base_name;
  std::string out = "product:" + std::string(expander::to_string(*pairing));
  if (base != Base::Sanov) out += ":" + base_name;
  return out;
}

CayleyInstance build_cayley(const CayleyRecipe& recipe, std::uint64_t modulus,
                            std::size_t order_cap, std::size_t word_power) {
  auto base = recipe.base == CayleyRecipe::Base::Sanov ? sanov_generators(modulus)
                                                       : elementary_generators(modulus);
  CayleyInstance out;
  out.modulus = modulus;
  out.dim = 2;
  if (recipe.pairing) {
    if (word_power != 1) throw InvalidInput("word powers are not supported for product recipes");
    auto c = cayley_graph(product_generators(base, *recipe.pairing), order_cap);
    out.factors = 2;
    out.labels.reserve(c.labels.size());
    for (const auto& e : c.labels) {
      std::vector<std::uint32_t> flat(e.left.entries().begin(), e.left.entries().end());
      flat.insert(flat.end(), e.right.entries().begin(), e.right.entries().end());
      out.labels.push_back(std::move(flat));
    }
    out.graph = std::move(c.graph);
    out.reached_order = c.reached_order;
    out.full_group_order = c.full_group_order;
    return out;
  }
  if (word_power != 1) base = word_power_generators(base, word_power);
  auto c = cayley_graph(base, order_cap);
  out.labels.reserve(c.labels.size());
  for (const auto& e : c.labels) out.labels.emplace_back(e.entries().begin(), e.entries().end());
  out.graph = std::move(c.graph);
  out.reached_order = c.reached_order;
  out.full_group_order = c.full_group_order;
  return out;
}

std::string format_labels(const CayleyInstance& c) {
  std::string out = "# dim " + std::to_string(c.dim) + " modulus " + std::to_string(c.modulus) +
                    " factors " + std::to_string(c.factors) + "\n";
  for (std::size_t v = 0; v < c.labels.size(); ++v) {
    out += std::to_string(v);
    for (std::uint32_t x : c.labels[v]) {
      out += ' ';
      out += std::to_string(x);
    }
    out += '\n';
  }
  return out;
}

TowerReport girth_tower_report(std::uint64_t p, std::size_t max_level, const CayleyRecipe& recipe,
                               std::size_t order_cap, const SpectrumOptions& options) {
  if (max_level == 0) throw InvalidInput("tower needs at least one level");
  if (!prime_power(p) || prime_power(p)->second != 1) {
    throw InvalidInput(std::to_string(p) + " is not prime");
  }
  TowerReport report;
  report.p = p;
  report.recipe = recipe.to_string();
  std::uint64_t q = 1;
  for (std::size_t level = 1; level <= max_level; ++level) {
    q *= p;
    const CayleyInstance c = build_cayley(recipe, q, order_cap);
    TowerRow row;
    row.level = level;
    row.modulus = q;
    row.vertices = c.graph.num_vertices();
    row.group_order = c.full_group_order;
    row.degree = c.graph.max_degree();
    row.girth = girth(c.graph);
    const Spectrum s = spectrum(c.graph, options);
    row.lambda2 = s.lambda2;
    row.gap = s.gap;
    if (!report.rows.empty() && girth_less(row.girth, report.rows.back().girth)) {
      report.girth_nondecreasing = false;
    }
    report.rows.push_back(row);
  }
  return report;
}

std::vector<IntMatrix2> sanov_lift() { return {{1, 2, 0, 1}, {1, 0, 2, 1}}; }
std::vector<IntMatrix2> elementary_lift() { return {{1, 1, 0, 1}, {1, 0, 1, 1}}; }

std::optional<Word> find_relation(std::span<const IntMatrix2> generators, std::size_t max_length) {
  using boost::multiprecision::cpp_int;
  struct Big {
    cpp_int a, b, c, d;
  };
  std::vector<Big> letters;
  for (const IntMatrix2& g : generators) {
    if (g.a * g.d - g.b * g.c != 1) throw InvalidInput("relation search needs det = 1 generators");
    letters.push_back({g.a, g.b, g.c, g.d});
    letters.push_back({g.d, -g.b, -g.c, g.a});
  }
  auto mul = [](const Big& x, const Big& y) {
    return Big{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
               x.c * y.b + x.d * y.d};
  };
  auto is_identity = [](const Big& x) { return x.a == 1 && x.b == 0 && x.c == 0 && x.d == 1; };

  std::optional<Word> best;
  Word word;
  std::vector<Big> prefix{Big{1, 0, 0, 1}};
  // Depth-first over freely reduced words; bound shrinks once a relation is
  // found so the result is the first shortest one in DFS order.
  std::size_t bound = max_length;
  auto dfs = [&](auto&& self) -> void {
    if (!word.empty() && is_identity(prefix.back())) {
      if (!best || word.size() < best->size()) {
        best = word;
        bound = word.size() - 1;
      }
      return;
    }
    if (word.size() >= bound) return;
    for (std::size_t l = 0; l < letters.size(); ++l) {
      if (!word.empty() && (word.back() ^ 1U) == l) continue;
      word.push_back(l);
      prefix.push_back(mul(prefix.back(), letters[l]));
      self(self);
      prefix.pop_back();
      word.pop_back();
    }
  };
  dfs(dfs);
  return best;
}

}  // namespace expander
