#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "expander/builders.hpp"
#include "expander/errors.hpp"
#include "expander/family_spec.hpp"
#include "expander/graph_io.hpp"
#include "expander/matrix_group.hpp"
#include "expander/metrics.hpp"
#include "expander/percolation.hpp"
#include "expander/probe.hpp"
#include "expander/reports.hpp"
#include "expander/search.hpp"

namespace py = pybind11;
using namespace expander;

namespace {

using EdgePairs = std::vector<std::pair<Vertex, Vertex>>;

// Reports cross the boundary as JSON, decoded by the json module.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object fraction(const std::optional<Rational>& r) {
  if (!r) return py::none();
  return py::module_::import("fractions").attr("Fraction")(r->numerator(), r->denominator());
}

py::object girth_py(const Girth& g) { return g ? py::object(py::int_(*g)) : py::none(); }

EdgePairs pairs(const std::vector<Edge>& edges) {
  EdgePairs out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

Graph make_graph(std::size_t n, const EdgePairs& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v] : edges) es.push_back(make_edge(u, v));
  return Graph::from_edges(n, es);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Expansion, girth and percolation tools for spanning sub-expander searches";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ComputationRefused>(m, "ComputationRefused", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_static("from_text", [](const std::string& text) { return Graph::from_edge_list(parse_edge_list(text)); })
      .def_property_readonly("n", &Graph::num_vertices)
      .def_property_readonly("m", &Graph::num_edges)
      .def("edges", [](const Graph& g) { return pairs(g.edges()); })
      .def("degree", &Graph::degree)
      .def("to_text", [](const Graph& g) { return format_edge_list(g.to_edge_list()); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("build", [](const std::string& spec) { return build_family(FamilySpec::parse(spec)).graph; },
        py::arg("spec"), "Graph of a family spec such as 'random-regular:n=64,d=4,seed=1'.");
  m.def("canonical_spec", [](const std::string& spec) { return FamilySpec::parse(spec).to_string(); });

  m.def("measure",
        [](const Graph& g, std::size_t exact_max) { return to_py(to_json(measure(g, exact_max))); },
        py::arg("g"), py::arg("exact_max") = kDefaultExactLimit);
  m.def("spectrum", [](const Graph& g) {
    const Spectrum s = spectrum(g);
    py::dict d;
    d["lambda2"] = s.lambda2;
    d["lambda_min"] = s.lambda_min;
    d["rho_star"] = s.rho_star;
    d["gap"] = s.gap;
    return d;
  });
  m.def("cheeger_exact", [](const Graph& g) {
    const ExactExpansion e = cheeger_exact(g);
    return py::make_tuple(fraction(e.value), e.witness.members());
  });
  m.def("conductance_exact", [](const Graph& g) {
    const ExactExpansion e = conductance_exact(g);
    return py::make_tuple(fraction(e.value), e.witness.members());
  });
  m.def("girth", [](const Graph& g) { return girth_py(girth(g)); });
  m.def("diameter", [](const Graph& g) { return girth_py(diameter(g)); });
  m.def("ball_profile",
        [](const Graph& g, std::size_t radius) { return to_py(to_json(ball_expansion_profile(g, radius))); },
        py::arg("g"), py::arg("radius"));

  m.def("percolate",
        [](const Graph& g, double p, std::uint64_t seed) { return pairs(percolate(g, p, seed).retained); },
        py::arg("g"), py::arg("p"), py::arg("seed") = 0);
  m.def("condition_check", [](const Graph& g, double p) {
    const ConditionCheck c = condition_check(g, p);
    return py::make_tuple(c.value, c.satisfied);
  });

  m.def("trim_to_girth", &trim_to_girth, py::arg("g"), py::arg("girth"));
  m.def(
      "search",
      [](const Graph& g, std::optional<std::size_t> girth_target, std::optional<double> ratio,
         const std::string& strategy, std::size_t budget, std::uint64_t seed) {
        SearchOptions o;
        o.strategy = parse_strategy(strategy);
        o.budget = budget;
        o.seed = seed;
        if (girth_target.has_value() == ratio.has_value()) throw UsageError("give exactly one of girth or ratio");
        const SearchResult r = girth_target ? search_spanning_subexpander(g, *girth_target, o)
                                            : search_with_ratio(g, *ratio, o);
        py::dict d = to_py(to_json(r));
        d["kept"] = pairs(r.kept);
        return d;
      },
      py::arg("g"), py::arg("girth") = py::none(), py::arg("ratio") = py::none(), py::arg("strategy") = "trim",
      py::arg("budget") = 10000, py::arg("seed") = 0);

  m.def(
      "probe",
      [](const std::vector<std::string>& families, const std::vector<double>& ratios,
         const std::vector<std::string>& strategies, std::size_t budget, std::uint64_t seed, std::size_t threads) {
        std::vector<FamilySpec> specs;
        for (const std::string& f : families) specs.push_back(FamilySpec::parse(f));
        ProbeOptions o;
        o.ratios = ratios;
        if (!strategies.empty()) {
          o.strategies.clear();
          for (const std::string& s : strategies) o.strategies.push_back(parse_strategy(s));
        }
        o.budget = budget;
        o.seed = seed;
        o.threads = threads;
        ProbeReport report;
        {
          py::gil_scoped_release release;
          report = conjecture_probe(specs, o);
        }
        return py::make_tuple(format_probe_csv(report), to_py(to_json(report)));
      },
      py::arg("families"), py::arg("ratios"), py::arg("strategies") = std::vector<std::string>{},
      py::arg("budget") = 10000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line in-process; returns (exit_code, stdout, stderr).");
}
