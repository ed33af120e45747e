#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "expander/builders.hpp"
#include "expander/errors.hpp"
#include "expander/family_spec.hpp"
#include "expander/format.hpp"
#include "expander/graph_io.hpp"
#include "expander/matrix_group.hpp"
#include "expander/percolation.hpp"
#include "expander/probe.hpp"
#include "expander/reports.hpp"
#include "expander/search.hpp"

namespace expander::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kManifestFormat = 1;

// Flags whose value names a file the command writes.
const std::vector<std::string> kOutputFlags = {"-o", "--output", "--retained", "--manifest"};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Sibling file of `out` with another extension, e.g. run.csv -> run.json.
fs::path sidecar(const fs::path& out, const std::string& ext) {
  fs::path p = out;
  p.replace_extension(ext);
  if (p == out) p += ext;
  return p;
}

/// Inputs read and files written by one command, for the manifest.
class Run {
 public:
  Run(const std::vector<std::string>& argv, std::ostream& out) : argv_(argv), out_(out) {}

  Graph read_graph(const std::string& path) {
    const std::string text = read_file(path);
    inputs_.push_back({{"path", path}, {"fnv1a64", fingerprint_hex(text)}});
    return Graph::from_edge_list(parse_edge_list(text));
  }

  /// Writes to `path`, or to the primary stream when `path` is empty.
  void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
      out_ << content;
      return;
    }
    write(path, content);
  }

  void write(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("cannot write " + path.string());
    f << content;
    f.close();
    if (!f) throw InvalidInput("failed writing " + path.string());
    outputs_.push_back({{"path", path.string()}, {"fnv1a64", fingerprint_hex(content)}});
  }

  Json& config() { return config_; }
  Json& seeds() { return seeds_; }

  /// Writes manifest.json next to the primary output (or at `manifest`).
  void finish(const std::string& command, const std::string& primary, const std::string& manifest) {
    if (primary.empty() && manifest.empty()) return;
    const fs::path where =
        manifest.empty() ? fs::path(primary).parent_path() / "manifest.json" : fs::path(manifest);
    Json m;
    m["tool"] = "expander";
    m["format"] = kManifestFormat;
    m["command"] = command;
    m["argv"] = argv_;
    m["cwd"] = fs::current_path().string();
    m["config"] = config_;
    m["seeds"] = seeds_;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    if (where.has_parent_path()) fs::create_directories(where.parent_path());
    std::ofstream f(where, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidInput("cannot write " + where.string());
    f << m.dump(2) << "\n";
  }

 private:
  std::vector<std::string> argv_;
  std::ostream& out_;
  Json config_ = Json::object();
  Json seeds_ = Json::object();
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
};

/// Records every option of a subcommand (given values or defaults).
void record_options(const CLI::App& sub, Json& config) {
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    const auto& results = opt->results();
    if (results.empty()) {
      if (opt->get_type_size() == 0) {
        config[name] = false;
      } else {
        const std::string d = opt->get_default_str();
        config[name] = d.empty() ? Json(nullptr) : Json(d);
      }
    } else if (opt->get_type_size() == 0) {
      config[name] = true;
    } else if (results.size() == 1 && opt->get_items_expected_max() <= 1) {
      config[name] = results.front();
    } else {
      config[name] = results;
    }
  }
}

std::size_t default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int run_replay(const std::string& manifest_path, const std::string& into_arg, std::ostream& out,
               std::ostream& err);

struct Common {
  std::string output;
  std::string manifest;
  std::size_t exact_max = kDefaultExactLimit;
  std::size_t dense_limit = SpectrumOptions{}.dense_limit;
  std::uint64_t seed = 0;
  std::size_t threads = default_threads();
};

CLI::Option* add_output(CLI::App* sub, Common& c) {
  sub->add_option("--manifest", c.manifest, "Manifest path (default: next to the output)");
  return sub->add_option("-o,--output", c.output, "Output file (default: standard output)");
}

void add_exact(CLI::App* sub, Common& c) {
  sub->add_option("--exact-max", c.exact_max, "Largest n for exact expansion")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{3}, std::size_t{62}));
  sub->add_option("--dense-limit", c.dense_limit, "Largest n for the dense eigensolver")
      ->capture_default_str();
}

const auto kProbability = CLI::Range(0.0, 1.0);
const auto kRatio = CLI::Validator(
    [](std::string& s) -> std::string {
      double x = 0.0;
      if (!CLI::detail::lexical_cast(s, x) || !(x > 0.0 && x <= 1.0)) {
        return "ratio must lie in (0, 1], got " + s;
      }
      return {};
    },
    "RATIO in (0,1]");

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const bool color = &err == &std::cerr && std::getenv("NO_COLOR") == nullptr && isatty(2);
  auto report_error = [&](const std::string& what) {
    err << (color ? "\033[31merror\033[0m: " : "error: ") << what << "\n";
  };

  CLI::App app{"Spanning high-girth sub-expander experiments", "expander"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");
  Common c;
  app.add_option("--threads", c.threads, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "Build a graph from a family spec");
  std::string gen_spec;
  gen->add_option("spec", gen_spec, "Family spec, e.g. random-regular:n=10,d=3,seed=1")->required();
  add_output(gen, c);

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "Expansion, spectrum, girth, diameter");
  std::string graph_path;
  measure_cmd->add_option("graph", graph_path, "Edge-list file")->required();
  add_exact(measure_cmd, c);
  add_output(measure_cmd, c);

  // percolate
  auto* perc = app.add_subcommand("percolate", "One Bernoulli bond percolation sample");
  double p = 0.5;
  bool check_condition = false;
  std::string retained_path;
  perc->add_option("graph", graph_path, "Edge-list file")->required();
  perc->add_option("--p", p, "Retention probability")->required()->check(kProbability);
  perc->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  perc->add_flag("--check-condition", check_condition, "Add rho_star * d * p columns");
  perc->add_option("--retained", retained_path, "Also write the retained edges");
  add_output(perc, c);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Giant component fraction over a p grid");
  std::vector<double> grid;
  std::size_t steps = 0;
  std::size_t seeds_per_p = 10;
  sweep->add_option("graph", graph_path, "Edge-list file")->required();
  auto* grid_opt = sweep->add_option("--grid", grid, "Comma separated p values")
                       ->delimiter(',')
                       ->check(kProbability);
  sweep->add_option("--steps", steps, "Evenly spaced grid over [0, 1]")
      ->excludes(grid_opt)
      ->check(CLI::Range(std::size_t{2}, std::size_t{1'000'000}));
  sweep->add_option("--seeds", seeds_per_p, "Samples per p")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  sweep->add_flag("--check-condition", check_condition, "Add rho_star * d * p columns");
  add_output(sweep, c);

  // trim
  auto* trim = app.add_subcommand("trim", "Delete short-cycle edges until the girth target holds");
  std::size_t girth_target = 0;
  trim->add_option("graph", graph_path, "Edge-list file")->required();
  trim->add_option("--girth", girth_target, "Girth target")
      ->required()
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 30));
  add_output(trim, c);

  // search
  auto* search = app.add_subcommand("search", "Search a spanning high-girth sub-expander");
  double ratio = 0.0;
  std::string strategy_name = "trim";
  std::size_t budget = 10'000;
  std::optional<double> search_p;
  search->add_option("graph", graph_path, "Edge-list file")->required();
  auto* girth_opt = search->add_option("--girth", girth_target, "Absolute girth target")
                        ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 30));
  auto* ratio_opt = search->add_option("--ratio", ratio, "Girth target as a fraction of the diameter")
                        ->check(kRatio)
                        ->excludes(girth_opt);
  girth_opt->excludes(ratio_opt);
  search->add_option("--strategy", strategy_name, "trim, percolate-repair or anneal")
      ->capture_default_str()
      ->check(CLI::IsMember({"trim", "percolate-repair", "anneal"}));
  search->add_option("--budget", budget, "Moves (anneal) or additions (percolate-repair)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  search->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  search->add_option("--p", search_p, "Percolate-repair retention probability")->check(kProbability);
  add_exact(search, c);
  add_output(search, c);

  // probe
  auto* probe = app.add_subcommand("probe", "Conjecture probe over families and girth ratios");
  std::vector<std::string> families;
  std::vector<double> ratios;
  std::vector<std::string> strategy_names;
  probe->add_option("--family", families, "Family instance spec (repeatable)")->required();
  probe->add_option("--ratio", ratios, "Girth ratios c (repeatable or comma separated)")
      ->required()
      ->delimiter(',')
      ->check(kRatio);
  probe->add_option("--strategy", strategy_names, "Strategies to run (default: all)")
      ->delimiter(',')
      ->check(CLI::IsMember({"trim", "percolate-repair", "anneal"}));
  probe->add_option("--budget", budget, "Per-search budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  probe->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  add_exact(probe, c);
  add_output(probe, c);

  // balls
  auto* balls = app.add_subcommand("balls", "Expansion of every radius-r ball");
  std::size_t radius = 1;
  balls->add_option("graph", graph_path, "Edge-list file")->required();
  balls->add_option("--radius", radius, "Ball radius")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30));
  add_exact(balls, c);
  add_output(balls, c);

  // tower
  auto* tower = app.add_subcommand("tower", "Girth and gap of Cayley graphs of SL(2, Z/p^n Z)");
  std::vector<std::uint64_t> primes;
  std::size_t levels = 1;
  std::string recipe_text = "sanov";
  std::size_t cap = kDefaultOrderCap;
  tower->add_option("--p", primes, "Primes (repeatable or comma separated)")
      ->required()
      ->delimiter(',');
  tower->add_option("--levels", levels, "Levels n = 1..L")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{30}));
  tower->add_option("--recipe", recipe_text, "sanov, elementary or product:<pairing>[:<base>]")
      ->capture_default_str();
  tower->add_option("--cap", cap, "Group order cap")->capture_default_str();
  add_exact(tower, c);
  add_output(tower, c);

  // replay
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare artifact hashes");
  std::string manifest_path;
  std::string into;
  replay->add_option("manifest", manifest_path, "manifest.json of an earlier run")->required();
  replay->add_option("--into", into, "Directory for the re-run outputs (default: <manifest dir>/replay)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(e.what());
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    if (command == "replay") return run_replay(manifest_path, into, out, err);

    Run run(args, out);
    record_options(*sub, run.config());
    run.config()["threads"] = c.threads;
    SpectrumOptions spec_opts;
    spec_opts.dense_limit = c.dense_limit;

    if (command == "gen") {
      const FamilySpec spec = FamilySpec::parse(gen_spec);
      run.config()["canonical_spec"] = spec.to_string();
      const BuiltInstance built = build_family(spec);
      run.emit(c.output, format_edge_list(built.graph.to_edge_list()));
      if (built.cayley && !c.output.empty()) {
        run.write(sidecar(c.output, ".labels"), format_labels(*built.cayley));
      }
    } else if (command == "measure") {
      const Graph g = run.read_graph(graph_path);
      run.emit(c.output, to_json(measure(g, c.exact_max, spec_opts)).dump(2) + "\n");
    } else if (command == "percolate") {
      const Graph g = run.read_graph(graph_path);
      run.seeds()["seed"] = c.seed;
      const PercolationSample s = percolate(g, p, c.seed);
      const ComponentSummary cs = component_summary(g, s);
      std::string csv = "p,seed,retained_edges,components,giant_fraction,condition_value,condition_ok\n";
      csv += format_real(p) + "," + std::to_string(c.seed) + "," + std::to_string(s.retained.size()) +
             "," + std::to_string(cs.count) + "," + format_real(cs.giant_fraction) + ",";
      if (check_condition) {
        const ConditionCheck cc = condition_check(g, p, spec_opts);
        csv += format_real(cc.value) + "," + (cc.satisfied ? "true" : "false");
      } else {
        csv += ",";
      }
      run.emit(c.output, csv + "\n");
      if (!retained_path.empty()) {
        run.write(retained_path, format_edge_list({g.num_vertices(), s.retained}));
      }
    } else if (command == "sweep") {
      const Graph g = run.read_graph(graph_path);
      if (grid.empty()) {
        if (steps == 0) throw UsageError("sweep needs --grid or --steps");
        for (std::size_t i = 0; i < steps; ++i) {
          grid.push_back(static_cast<double>(i) / static_cast<double>(steps - 1));
        }
      }
      run.seeds()["base_seed"] = c.seed;
      const auto rows = percolation_sweep(g, grid, seeds_per_p, c.seed, check_condition, spec_opts);
      run.emit(c.output, format_sweep_csv(rows));
    } else if (command == "trim") {
      const Graph g = run.read_graph(graph_path);
      run.emit(c.output, format_edge_list(trim_to_girth(g, girth_target).to_edge_list()));
    } else if (command == "search") {
      const Graph g = run.read_graph(graph_path);
      SearchOptions o;
      o.strategy = parse_strategy(strategy_name);
      o.budget = budget;
      o.seed = c.seed;
      o.percolation_p = search_p;
      o.exact_limit = c.exact_max;
      o.spectrum = spec_opts;
      run.seeds()["seed"] = c.seed;
      if (girth_opt->count() == 0 && ratio_opt->count() == 0) {
        throw UsageError("search needs --girth or --ratio");
      }
      const SearchResult r = girth_opt->count() ? search_spanning_subexpander(g, girth_target, o)
                                                : search_with_ratio(g, ratio, o);
      Json report = to_json(r);
      if (c.output.empty()) {
        out << report.dump(2) << "\n";
      } else {
        run.write(c.output, format_edge_list({g.num_vertices(), r.kept}));
        run.write(sidecar(c.output, ".json"), report.dump(2) + "\n");
      }
    } else if (command == "probe") {
      std::vector<FamilySpec> specs;
      for (const std::string& f : families) specs.push_back(FamilySpec::parse(f));
      ProbeOptions o;
      o.ratios = ratios;
      if (!strategy_names.empty()) {
        o.strategies.clear();
        for (const std::string& s : strategy_names) o.strategies.push_back(parse_strategy(s));
      }
      o.budget = budget;
      o.seed = c.seed;
      o.threads = c.threads;
      o.search.exact_limit = c.exact_max;
      o.search.spectrum = spec_opts;
      const ProbeReport report = conjecture_probe(specs, o);
      run.seeds()["base_seed"] = c.seed;
      Json runs = Json::array();
      for (const ProbeRecord& rec : report.records) {
        for (const SearchResult& s : rec.runs) {
          runs.push_back({{"instance", rec.instance},
                          {"c", json_real(rec.c)},
                          {"strategy", std::string(to_string(s.strategy))},
                          {"seed", s.seed}});
        }
      }
      run.seeds()["runs"] = std::move(runs);
      run.emit(c.output, format_probe_csv(report));
      if (!c.output.empty()) run.write(sidecar(c.output, ".json"), to_json(report).dump(2) + "\n");
    } else if (command == "balls") {
      const Graph g = run.read_graph(graph_path);
      const BallProfile profile = ball_expansion_profile(g, radius, c.exact_max, spec_opts);
      if (c.output.empty()) {
        out << to_json(profile).dump(2) << "\n";
      } else {
        run.write(c.output, format_ball_csv(profile));
        run.write(sidecar(c.output, ".json"), to_json(profile).dump(2) + "\n");
      }
    } else if (command == "tower") {
      const CayleyRecipe recipe = CayleyRecipe::parse(recipe_text);
      std::vector<TowerReport> reports;
      for (std::uint64_t prime : primes) {
        reports.push_back(girth_tower_report(prime, levels, recipe, cap, spec_opts));
      }
      run.emit(c.output, format_tower_csv(reports));
      if (!c.output.empty()) {
        Json j = Json::array();
        for (const TowerReport& r : reports) j.push_back(to_json(r));
        run.write(sidecar(c.output, ".json"), j.dump(2) + "\n");
      }
    }
    run.finish(command, c.output, c.manifest);
    return kOk;
  } catch (const UsageError& e) {
    report_error(e.what());
    return kUsage;
  } catch (const InvalidInput& e) {
    report_error(e.what());
    return kInputData;
  } catch (const ComputationRefused& e) {
    report_error(e.what());
    return kRefused;
  } catch (const fs::filesystem_error& e) {
    report_error(e.what());
    return kInputData;
  } catch (const std::exception& e) {
    report_error(std::string("internal: ") + e.what());
    return kInternal;
  }
}

namespace {

int run_replay(const std::string& manifest_path, const std::string& into_arg, std::ostream& out,
               std::ostream& err) {
  Json m;
  try {
    m = Json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed manifest " + manifest_path + ": " + e.what());
  }
  if (m.value("tool", "") != "expander" || m.value("format", 0) != kManifestFormat) {
    throw InvalidInput(manifest_path + " is not an expander manifest");
  }
  const auto argv = m.at("argv").get<std::vector<std::string>>();
  const fs::path manifest_dir = fs::absolute(manifest_path).parent_path();
  const fs::path into = fs::absolute(into_arg.empty() ? manifest_dir / "replay" : fs::path(into_arg));

  // Output files are redirected into `into` by file name.
  std::vector<std::string> rerun;
  std::map<std::string, std::string> redirected;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& a = argv[i];
    auto redirect = [&](const std::string& path) {
      const std::string target = (into / fs::path(path).filename()).string();
      if (redirected.count(fs::path(path).filename().string()) != 0) {
        throw InvalidInput("manifest outputs share the file name " + fs::path(path).filename().string());
      }
      redirected[fs::path(path).filename().string()] = target;
      return target;
    };
    const auto eq = a.find('=');
    const std::string flag = a.substr(0, eq);
    const bool is_output =
        std::find(kOutputFlags.begin(), kOutputFlags.end(), flag) != kOutputFlags.end();
    if (is_output && eq != std::string::npos) {
      rerun.push_back(flag + "=" + redirect(a.substr(eq + 1)));
    } else if (is_output && i + 1 < argv.size()) {
      rerun.push_back(a);
      rerun.push_back(redirect(argv[++i]));
    } else {
      rerun.push_back(a);
    }
  }

  // Relative inputs resolve against the recorded working directory.
  const fs::path previous = fs::current_path();
  const fs::path recorded = m.value("cwd", std::string());
  for (const Json& in : m.at("inputs")) {
    fs::path path = in.at("path").get<std::string>();
    if (path.is_relative() && fs::exists(recorded)) path = recorded / path;
    const std::string hash = fingerprint_hex(read_file(path));
    if (hash != in.at("fnv1a64").get<std::string>()) {
      throw InvalidInput("input " + path.string() + " changed since the manifest was written");
    }
  }
  if (fs::exists(recorded)) fs::current_path(recorded);
  int code = kInternal;
  try {
    code = run(rerun, out, err);
  } catch (...) {
    fs::current_path(previous);
    throw;
  }
  fs::current_path(previous);
  if (code != kOk) return code;

  std::size_t mismatches = 0;
  for (const Json& o : m.at("outputs")) {
    const fs::path original = o.at("path").get<std::string>();
    const fs::path replayed = into / original.filename();
    const std::string hash = fs::exists(replayed) ? fingerprint_hex(read_file(replayed)) : "missing";
    const bool same = hash == o.at("fnv1a64").get<std::string>();
    out << (same ? "identical " : "DIFFERENT ") << replayed.string() << "\n";
    mismatches += !same;
  }
  if (mismatches != 0) {
    err << "error: " << mismatches << " replayed artifact(s) differ from the manifest\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace

}  // namespace expander::cli
