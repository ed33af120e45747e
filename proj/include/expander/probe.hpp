#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expander/family_spec.hpp"
#include "expander/search.hpp"

namespace expander {

/// One (instance, ratio) row: the best strategy's outcome.
struct ProbeRecord {
  std::string family;
  std::string instance;
  std::string group;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  double host_gap = 0.0;
  std::optional<Rational> host_h_exact;
  std::size_t diameter = 0;
  double c = 0.0;
  std::size_t girth_target = 0;
  Strategy strategy = Strategy::Trim;
  Girth best_girth;
  double best_gap = 0.0;
  std::optional<Rational> best_h_exact;
  /// best_girth / diameter; infinite for unbounded girth.
  double ratio_achieved = 0.0;
  bool success = false;
  bool degenerate_diameter = false;
  std::uint64_t seed = 0;
  /// Every strategy's validated result, in strategy name order.
  std::vector<SearchResult> runs;
};

struct FamilyRatioSummary {
  double c = 0.0;
  /// Minimum best gap over the family's instances: the empirical f estimate.
  double f_estimate = 0.0;
  std::size_t successes = 0;
  std::size_t instances = 0;
  /// (n, best girth) in increasing n.
  std::vector<std::pair<std::size_t, Girth>> girth_by_n;
  /// Set when there are >= 2 sizes: girth never drops as n grows and the
  /// largest instance beats the smallest.
  std::optional<bool> girth_grows;
};

struct FamilySummary {
  std::string family;
  std::vector<FamilyRatioSummary> per_ratio;
};

struct ProbeReport {
  std::vector<ProbeRecord> records;
  std::vector<FamilySummary> families;
};

struct ProbeOptions {
  std::vector<double> ratios;
  std::vector<Strategy> strategies = all_strategies();
  std::size_t budget = 10'000;
  std::uint64_t seed = 0;
  /// Worker threads for independent searches; results do not depend on it.
  std::size_t threads = 1;
  SearchOptions search;  ///< strategy, budget and seed are overridden per run
};

/// Seed of the search for (instance index, ratio index, strategy).
std::uint64_t probe_run_seed(std::uint64_t base, std::size_t instance, std::size_t ratio,
                             Strategy strategy);

/// For every instance and ratio runs every strategy and keeps the best:
/// highest gap among results meeting the target, else highest girth.
ProbeReport conjecture_probe(std::span<const FamilySpec> instances, const ProbeOptions& options);

/// CSV header:
/// family,instance,n,m,d,host_gap,host_h_exact,diameter,c,girth_target,strategy,
/// best_girth,best_gap,best_h_exact,ratio_achieved,success,degenerate_diameter,seed
std::string format_probe_csv(const ProbeReport& report);

}  // namespace expander
