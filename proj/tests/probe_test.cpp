#include <gtest/gtest.h>

#include "expander/errors.hpp"
#include "expander/probe.hpp"
#include "expander/reports.hpp"

using namespace expander;

namespace {

std::vector<FamilySpec> small_suite() {
  return {FamilySpec::parse("cycle:n=10"), FamilySpec::parse("petersen"),
          FamilySpec::parse("random-regular:n=32,d=3,seed=2"),
          FamilySpec::parse("random-regular:n=64,d=3,seed=2"),
          FamilySpec::parse("cayley:recipe=elementary,p=3")};
}

ProbeOptions small_options(std::size_t threads) {
  ProbeOptions o;
  o.ratios = {0.25, 0.5, 1.0};
  o.budget = 500;
  o.seed = 9;
  o.threads = threads;
  return o;
}

}  // namespace

TEST(Probe, CycleRowSucceeds) {
  const std::vector<FamilySpec> specs{FamilySpec::parse("cycle:n=10")};
  ProbeOptions o = small_options(1);
  o.ratios = {0.5};
  const ProbeReport r = conjecture_probe(specs, o);
  ASSERT_EQ(r.records.size(), 1u);
  const ProbeRecord& rec = r.records.front();
  EXPECT_EQ(rec.diameter, 5u);
  EXPECT_EQ(rec.girth_target, 3u);
  EXPECT_EQ(rec.best_girth, Girth(10));
  EXPECT_TRUE(rec.success);
  EXPECT_EQ(rec.host_h_exact, Rational(1, 2));  // C10: arcs of 4 have boundary 2
  EXPECT_EQ(rec.runs.size(), 3u);
}

TEST(Probe, DeterministicAndThreadIndependent) {
  const auto specs = small_suite();
  const ProbeReport a = conjecture_probe(specs, small_options(1));
  const ProbeReport b = conjecture_probe(specs, small_options(3));
  EXPECT_EQ(format_probe_csv(a), format_probe_csv(b));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Probe, CsvSchemaAndQuoting) {
  const ProbeReport r = conjecture_probe(small_suite(), small_options(1));
  const std::string csv = format_probe_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "family,instance,n,m,d,host_gap,host_h_exact,diameter,c,girth_target,strategy,"
            "best_girth,best_gap,best_h_exact,ratio_achieved,success,degenerate_diameter,seed");
  EXPECT_NE(csv.find("\"random-regular:n=32,d=3,seed=2\""), std::string::npos);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.records.size() + 1);
}

TEST(Probe, BestRecordDominatesItsRuns) {
  const ProbeReport r = conjecture_probe(small_suite(), small_options(1));
  for (const ProbeRecord& rec : r.records) {
    bool any_success = false;
    for (const SearchResult& s : rec.runs) any_success = any_success || s.meets_target();
    EXPECT_EQ(rec.success, any_success);
    for (const SearchResult& s : rec.runs) {
      if (rec.success && s.meets_target()) EXPECT_GE(rec.best_gap, s.gap);
      EXPECT_EQ(s.girth_target, rec.girth_target);
    }
  }
}

TEST(Probe, FamilySummaries) {
  const std::vector<FamilySpec> specs{FamilySpec::parse("random-regular:n=32,d=3,seed=2"),
                                      FamilySpec::parse("random-regular:n=64,d=3,seed=2"),
                                      FamilySpec::parse("complete:n=5")};
  const ProbeReport r = conjecture_probe(specs, small_options(1));
  ASSERT_EQ(r.families.size(), 2u);
  const FamilySummary& rr = r.families.front();
  EXPECT_EQ(rr.family, "random-regular:d=3,seed=2");
  ASSERT_EQ(rr.per_ratio.size(), 3u);
  for (const FamilyRatioSummary& s : rr.per_ratio) {
    EXPECT_EQ(s.instances, 2u);
    EXPECT_EQ(s.girth_by_n.size(), 2u);
    EXPECT_TRUE(s.girth_grows.has_value());
    double min_gap = 1e9;
    for (const ProbeRecord& rec : r.records) {
      if (rec.family == rr.family && rec.c == s.c) min_gap = std::min(min_gap, rec.best_gap);
    }
    EXPECT_EQ(s.f_estimate, min_gap);
  }
  // K5 has diameter 1.
  EXPECT_TRUE(r.records.back().degenerate_diameter);
  EXPECT_FALSE(r.families.back().per_ratio.front().girth_grows.has_value());
}

TEST(Probe, Validation) {
  const std::vector<FamilySpec> specs{FamilySpec::parse("cycle:n=10")};
  ProbeOptions o = small_options(1);
  o.ratios = {};
  EXPECT_THROW(conjecture_probe(specs, o), InvalidInput);
  o.ratios = {1.5};
  EXPECT_THROW(conjecture_probe(specs, o), InvalidInput);
  o.ratios = {0.5};
  EXPECT_THROW(conjecture_probe(std::vector<FamilySpec>{}, o), InvalidInput);
}
