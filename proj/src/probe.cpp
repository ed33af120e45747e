#include "expander/probe.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "expander/errors.hpp"
#include "expander/format.hpp"
#include "expander/random.hpp"

namespace expander {

namespace {

struct HostInfo {
  FamilySpec spec;
  Graph graph = Graph::empty(1);
  std::size_t diameter = 0;
  double gap = 0.0;
  std::optional<Rational> h_exact;
};

/// Runs tasks[i] for every i on up to `threads` workers; the first exception
/// is rethrown after all workers stop.
template <class Task>
void run_parallel(std::size_t count, std::size_t threads, Task&& task) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

bool better(const SearchResult& a, const SearchResult& b) {
  const bool a_ok = a.meets_target();
  const bool b_ok = b.meets_target();
  if (a_ok != b_ok) return a_ok;
  if (a_ok) return a.gap > b.gap;
  if (girth_less(b.girth_achieved, a.girth_achieved)) return true;
  if (girth_less(a.girth_achieved, b.girth_achieved)) return false;
  return a.gap > b.gap;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::uint64_t probe_run_seed(std::uint64_t base, std::size_t instance, std::size_t ratio,
                             Strategy strategy) {
  std::uint64_t s = split_seed(base, instance);
  s = split_seed(s, ratio);
  return split_seed(s, to_string(strategy));
}

ProbeReport conjecture_probe(std::span<const FamilySpec> instances, const ProbeOptions& options) {
  if (instances.empty()) throw InvalidInput("probe needs at least one family instance");
  if (options.ratios.empty()) throw InvalidInput("probe needs a nonempty ratio grid");
  for (double c : options.ratios) {
    if (!(c > 0.0 && c <= 1.0)) throw InvalidInput("girth ratios must lie in (0, 1]");
  }
  if (options.strategies.empty()) throw InvalidInput("probe needs at least one strategy");
  if (options.budget == 0) throw InvalidInput("search budget must be positive");
  std::vector<Strategy> strategies = options.strategies;
  std::sort(strategies.begin(), strategies.end(),
            [](Strategy a, Strategy b) { return to_string(a) < to_string(b); });
  strategies.erase(std::unique(strategies.begin(), strategies.end()), strategies.end());

  std::vector<HostInfo> hosts;
  for (const FamilySpec& spec : instances) {
    HostInfo h;
    h.spec = spec;
    h.graph = build_family(spec).graph;
    const Diameter d = diameter(h.graph);
    if (!d) throw InvalidInput("probe host " + spec.to_string() + " is disconnected");
    if (h.graph.num_vertices() < 2) throw InvalidInput("probe host needs at least 2 vertices");
    h.diameter = *d;
    h.gap = spectrum(h.graph, options.search.spectrum).gap;
    const std::size_t n = h.graph.num_vertices();
    if (n >= 3 && n <= options.search.exact_limit) {
      h.h_exact = cheeger_exact(h.graph, options.search.exact_limit).value;
    }
    hosts.push_back(std::move(h));
  }

  const std::size_t per_instance = options.ratios.size() * strategies.size();
  std::vector<std::optional<SearchResult>> results(hosts.size() * per_instance);
  run_parallel(results.size(), options.threads, [&](std::size_t task) {
    const std::size_t i = task / per_instance;
    const std::size_t r = (task % per_instance) / strategies.size();
    const Strategy s = strategies[task % strategies.size()];
    SearchOptions so = options.search;
    so.strategy = s;
    so.budget = options.budget;
    so.seed = probe_run_seed(options.seed, i, r, s);
    const std::size_t target = girth_target_for(options.ratios[r], hosts[i].diameter);
    results[task] = search_spanning_subexpander(hosts[i].graph, target, so);
  });

  ProbeReport report;
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    const HostInfo& h = hosts[i];
    for (std::size_t r = 0; r < options.ratios.size(); ++r) {
      ProbeRecord rec;
      rec.family = h.spec.family_id();
      rec.instance = h.spec.to_string();
      rec.group = h.spec.group_id();
      rec.n = h.graph.num_vertices();
      rec.m = h.graph.num_edges();
      rec.d = h.graph.max_degree();
      rec.host_gap = h.gap;
      rec.host_h_exact = h.h_exact;
      rec.diameter = h.diameter;
      rec.c = options.ratios[r];
      rec.girth_target = girth_target_for(rec.c, h.diameter);
      rec.degenerate_diameter = h.diameter <= 1;
      const SearchResult* best = nullptr;
      for (std::size_t k = 0; k < strategies.size(); ++k) {
        const SearchResult& res = *results[i * per_instance + r * strategies.size() + k];
        rec.runs.push_back(res);
        if (best == nullptr || better(res, *best)) best = &res;
      }
      rec.strategy = best->strategy;
      rec.best_girth = best->girth_achieved;
      rec.best_gap = best->gap;
      rec.best_h_exact = best->h_exact;
      rec.ratio_achieved = rec.best_girth ? static_cast<double>(*rec.best_girth) /
                                                static_cast<double>(h.diameter)
                                          : std::numeric_limits<double>::infinity();
      rec.success = best->meets_target();
      rec.seed = best->seed;
      report.records.push_back(std::move(rec));
    }
  }

  // Families in order of first appearance.
  std::vector<std::string> order;
  for (const ProbeRecord& rec : report.records) {
    if (std::find(order.begin(), order.end(), rec.family) == order.end()) order.push_back(rec.family);
  }
  for (const std::string& family : order) {
    FamilySummary fs;
    fs.family = family;
    for (double c : options.ratios) {
      FamilyRatioSummary rs;
      rs.c = c;
      rs.f_estimate = std::numeric_limits<double>::infinity();
      for (const ProbeRecord& rec : report.records) {
        if (rec.family != family || rec.c != c) continue;
        ++rs.instances;
        if (rec.success) ++rs.successes;
        rs.f_estimate = std::min(rs.f_estimate, rec.best_gap);
        rs.girth_by_n.emplace_back(rec.n, rec.best_girth);
      }
      std::stable_sort(rs.girth_by_n.begin(), rs.girth_by_n.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      if (rs.girth_by_n.size() >= 2 && rs.girth_by_n.front().first < rs.girth_by_n.back().first) {
        bool monotone = true;
        for (std::size_t k = 1; k < rs.girth_by_n.size(); ++k) {
          if (girth_less(rs.girth_by_n[k].second, rs.girth_by_n[k - 1].second)) monotone = false;
        }
        rs.girth_grows =
            monotone && girth_less(rs.girth_by_n.front().second, rs.girth_by_n.back().second);
      }
      fs.per_ratio.push_back(std::move(rs));
    }
    report.families.push_back(std::move(fs));
  }
  return report;
}

std::string format_probe_csv(const ProbeReport& report) {
  std::string out =
      "family,instance,n,m,d,host_gap,host_h_exact,diameter,c,girth_target,strategy,best_girth,"
      "best_gap,best_h_exact,ratio_achieved,success,degenerate_diameter,seed\n";
  for (const ProbeRecord& r : report.records) {
    out += csv_field(r.family) + "," + csv_field(r.instance) + "," + std::to_string(r.n) + "," +
           std::to_string(r.m) + "," + std::to_string(r.d) + "," + format_real(r.host_gap) + "," +
           format_rational(r.host_h_exact) + "," + std::to_string(r.diameter) + "," +
           format_real(r.c) + "," + std::to_string(r.girth_target) + "," +
           std::string(to_string(r.strategy)) + "," + format_girth(r.best_girth) + "," +
           format_real(r.best_gap) + "," + format_rational(r.best_h_exact) + "," +
           format_real(r.ratio_achieved) + "," + (r.success ? "true" : "false") + "," +
           (r.degenerate_diameter ? "true" : "false") + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

}  // namespace expander
