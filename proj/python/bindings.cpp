#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>

#include "reebcat/interleave.hpp"
#include "reebcat/io.hpp"

namespace py = pybind11;
using namespace reebcat;

namespace {

/// Shared, immutable R-graph.
struct Graph {
  GraphRef ref;

  const RGraph& g() const { return *ref; }
};

struct Smoothing {
  SmoothingResult result;
};

std::vector<std::string> strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  for (const Rational& v : values) out.push_back(v.str());
  return out;
}

Graph make(RGraph g) {
  auto report = validate(g);
  if (!report.ok()) throw std::invalid_argument(report.describe());
  return {share(std::move(g))};
}

}  // namespace

PYBIND11_MODULE(_reebcat, m) {
  m.doc() = "R-graphs, smoothings and interleavings with exact rational values";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def_static("parse", [](const std::string& text) { return make(parse_rgraph(text)); })
      .def("text", [](const Graph& g) { return emit_rgraph(g.g()); })
      .def("dot", [](const Graph& g, bool rank) { return export_dot(g.g(), {rank}); }, py::arg("rank_by_value") = true)
      .def("criticals", [](const Graph& g) { return strings(g.g().criticals()); })
      .def_property_readonly("num_vertices", [](const Graph& g) { return g.g().num_vertices(); })
      .def_property_readonly("num_edges", [](const Graph& g) { return g.g().num_edges(); })
      .def_property_readonly("num_components", [](const Graph& g) { return num_components(g.g()); })
      .def("reduced", [](const Graph& g) { return Graph{share(reduce(g.g()).coarse)}; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph " + std::to_string(g.g().num_vertices()) + " vertices, " + std::to_string(g.g().num_edges()) +
               " edges>";
      });

  m.def("line", [](const std::string& a, const std::string& b) {
    return make(line_graph(parse_rational(a), parse_rational(b)));
  });
  m.def("loop", [](const std::string& a, const std::string& b) {
    return make(loop_graph(parse_rational(a), parse_rational(b)));
  });
  m.def("point", [](const std::string& a) { return make(point_graph(parse_rational(a))); });
  m.def("fork", []() { return make(fork_graph()); });
  m.def("reeb", [](const std::string& field) { return make(reeb_of_complex(parse_field(field)).graph); },
        "Reeb graph of a scalar field document");

  m.def("is_isomorphic", [](const Graph& a, const Graph& b) { return is_isomorphic(a.ref, b.ref).has_value(); });

  py::class_<Smoothing>(m, "Smoothing")
      .def_property_readonly("graph", [](const Smoothing& s) { return Graph{s.result.smoothed}; })
      .def_property_readonly("epsilon", [](const Smoothing& s) { return s.result.eps.str(); })
      .def("zeta", [](const Smoothing& s) { return emit_morphism(s.result.zeta); });

  m.def(
      "smooth",
      [](const Graph& g, const std::string& eps, const std::string& algo) {
        const Rational e = parse_rational(eps);
        if (algo == "naive") return Smoothing{smooth_naive(g.ref, e)};
        if (algo != "sweep") throw std::invalid_argument("algo must be sweep or naive");
        return Smoothing{smooth_sweep(g.ref, e)};
      },
      py::arg("graph"), py::arg("epsilon"), py::arg("algo") = "sweep");

  m.def(
      "components",
      [](const Graph& g, std::optional<std::string> lo, std::optional<std::string> hi) {
        Interval i{lo ? std::optional(parse_rational(*lo)) : std::nullopt,
                   hi ? std::optional(parse_rational(*hi)) : std::nullopt, false};
        if (i.lo && i.hi && !(*i.lo < *i.hi)) i = Interval::none();
        const Cosheaf f = reeb_cosheaf(g.g());
        std::vector<std::vector<std::string>> out;
        for (const auto& comp : evaluate(f, i).components) {
          std::set<std::string> cells;
          for (const Part& p : comp) {
            const auto& set = p.is_node ? f.node_sets[p.index] : f.edge_sets[p.index];
            cells.insert(set[p.element].members.begin(), set[p.element].members.end());
          }
          out.emplace_back(cells.begin(), cells.end());
        }
        return out;
      },
      py::arg("graph"), py::arg("lo"), py::arg("hi"), "Components of the graph over the open interval (lo, hi)");

  m.def(
      "check_interleave",
      [](const Graph& f, const Graph& g, const std::string& eps, const std::string& alpha, const std::string& beta) {
        SettingRef s = make_setting(f.ref, g.ref, parse_rational(eps));
        Certificate c{s, parse_morphism(alpha, f.ref, s->ug.smoothed), parse_morphism(beta, g.ref, s->uf.smoothed)};
        auto v = verify_certificate(c);
        return py::make_tuple(v.ok, v.diagnostic);
      },
      py::arg("f"), py::arg("g"), py::arg("epsilon"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "distance",
      [](const Graph& f, const Graph& g, const std::string& tol, std::size_t budget) {
        DistanceBracket b;
        {
          py::gil_scoped_release release;
          b = distance_bracket(f.ref, g.ref, parse_rational(tol), budget);
        }
        py::dict out;
        out["infinite"] = b.infinite;
        out["lower"] = b.infinite ? py::none() : py::cast(b.lower.str());
        out["upper"] = b.infinite ? py::none() : py::cast(b.upper.str());
        out["unknown_gaps"] = b.unknown_gaps;
        py::list probes;
        for (const Probe& p : b.transcript) probes.append(py::make_tuple(p.eps.str(), to_string(p.status), p.nodes));
        out["transcript"] = probes;
        if (b.witness) {
          out["alpha"] = emit_morphism(b.witness->alpha);
          out["beta"] = emit_morphism(b.witness->beta);
        }
        return out;
      },
      py::arg("f"), py::arg("g"), py::arg("tol"), py::arg("budget") = kDefaultSearchBudget);
}
