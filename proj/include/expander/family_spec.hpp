#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expander/graph.hpp"
#include "expander/matrix_group.hpp"

namespace expander {

/// A buildable graph family instance in flat string form:
///
///   random-regular:n=1024,d=4,seed=7
///   cycle:n=10   complete:n=8   petersen
///   cayley:recipe=elementary,p=5[,level=1][,power=1][,cap=...]
///   power:k=2,inner=(cayley:recipe=elementary,p=5)
///   product:inner=(cycle:n=3),inner2=(cycle:n=4)
///
/// Grammar: kind[:key=value(,key=value)*], where a value is either a bare
/// token without ",()" or a parenthesized nested spec. `power-of` and
/// `product-of` are accepted as aliases.
struct FamilySpec {
  std::string kind;
  std::map<std::string, std::string> values;
  std::vector<FamilySpec> inner;

  /// Throws UsageError naming the offending position or key.
  static FamilySpec parse(std::string_view text);

  /// Canonical form: fixed key order per kind, optional keys only when they
  /// differ from their defaults.
  std::string to_string() const;

  /// Canonical form with the size keys (n, p, level) removed at every depth;
  /// instances of one family share it.
  std::string family_id() const;

  /// The spec under any power wrappers, so G and G^k share a group id.
  std::string group_id() const;

  std::uint64_t integer(std::string_view key) const;
};

struct BuiltInstance {
  Graph graph = Graph::empty(1);
  std::optional<CayleyInstance> cayley;  ///< set for cayley specs
};

BuiltInstance build_family(const FamilySpec& spec);

}  // namespace expander
