#include "doctest.h"

#include <fstream>
#include <sstream>

#include "reebcat/io.hpp"

using namespace reebcat;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(REEBCAT_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::size_t> degrees(const RGraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out.push_back(g.up_edges(v).size() + g.down_edges(v).size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-0.125") == q(-1, 8));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("graph documents round trip") {
  for (const char* name : {"line.rg", "loop.rg", "fork.rg", "point.rg", "split.expected.rg"}) {
    const std::string doc = slurp(name);
    CHECK_MESSAGE(emit_rgraph(parse_rgraph(doc)) == doc, name);
  }
  CHECK(parse_rgraph(slurp("loop.rg")) == loop_graph(0, 1));
  const RGraph split = parse_rgraph(slurp("split.rg"));
  CHECK(split.num_edges() == 3);
  CHECK(emit_rgraph(split) == slurp("split.expected.rg"));
  CHECK(emit_rgraph(split) == emit_rgraph(parse_rgraph(slurp("split.rg"))));
}

TEST_CASE("graph document errors") {
  CHECK_THROWS_WITH_AS(parse_rgraph("vertex a 0\nvertex a 1\n"), "line 2: duplicate id a", ParseError);
  CHECK_THROWS_WITH_AS(parse_rgraph("vertex a 0\nedge e a b\n"), "line 2: unknown vertex b", ParseError);
  CHECK_THROWS_AS(parse_rgraph("vertex a 0\nvertex b 0\nedge e a b\n"), ParseError);
  CHECK_THROWS_AS(parse_rgraph("criticals 0 1\nvertex a 1/2\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rgraph("# comment\nvertx a 0\n"), "line 2: unknown record 'vertx'", ParseError);
  CHECK_THROWS_AS(parse_rgraph("vertex a zero\n"), ParseError);
}

TEST_CASE("morphism documents") {
  auto loop = share(loop_graph(0, 1));
  auto line = share(line_graph(0, 1));
  auto m = parse_morphism("vertex v0 v0\nvertex v1 v1\nedge e0 e0\nedge e1 e0\n", loop, line);
  CHECK(validate_morphism(m).ok());
  CHECK(emit_morphism(m) == "vertex v0 v0\nvertex v1 v1\nedge e0 e0\nedge e1 e0\n");
  CHECK_THROWS_AS(parse_morphism("vertex v0 v0\n", loop, line), ParseError);
  CHECK_THROWS_AS(parse_morphism("vertex v0 nowhere\n", loop, line), ParseError);
}

TEST_CASE("fields") {
  auto tri = parse_field("v a 0\nv b 1/2\nv c 1\ne ab a b\ne bc b c\ne ac a c\nt abc a b c\n");
  CHECK(tri.triangles.size() == 1);
  CHECK_THROWS_WITH_AS(parse_field("v a 0\nv b 1/2\nv c 1\ne ab a b\ne bc b c\nt abc a b c\n"),
                       "triangle abc is missing its edge a-c", ParseError);
  CHECK_THROWS_AS(parse_field("v a 0\nv b 0\ne ab a b\n"), ParseError);
  CHECK_THROWS_AS(parse_field("v a 0\nv a 1\n"), ParseError);
  auto torus = parse_field(slurp("torus.field"));
  CHECK(merge_values({}, torus.values).size() == 6);
  CHECK(emit_field(torus) == emit_field(parse_field(emit_field(torus))));
}

TEST_CASE("Reeb graphs of complexes") {
  auto edge = reeb_of_complex(parse_field("v a 0\nv b 1\ne ab a b\n"));
  CHECK(is_isomorphic(share(edge.graph), share(line_graph(0, 1))).has_value());

  auto hollow = reeb_of_complex(parse_field(slurp("triangle.field")));
  RGraph expect = GraphBuilder()
                      .vertex("a", 0)
                      .vertex("b", q(1, 2))
                      .vertex("c", 1)
                      .edge("ab", "a", "b")
                      .edge("bc", "b", "c")
                      .edge("ac", "a", "c")
                      .build();
  CHECK(is_isomorphic(share(hollow.graph), share(expect)).has_value());
  CHECK(num_components(hollow.graph) == 1);

  auto solid = reeb_of_complex(parse_field(slurp("solid.field")));
  CHECK(is_isomorphic(share(reduce(solid.graph).coarse), share(line_graph(0, 1))).has_value());
  // the triangle's fibre at 1/2 is one point, shared with vertex b
  CHECK(solid.locate(6, q(1, 2)) == solid.locate(1, q(1, 2)));
  CHECK_THROWS_AS(solid.locate(0, 1), std::invalid_argument);

  auto torus = reeb_of_complex(parse_field(slurp("torus.field")));
  const RGraph minimal = reduce(torus.graph).coarse;
  CHECK(degrees(minimal) == std::vector<std::size_t>{1, 1, 3, 3});
  CHECK(minimal.num_edges() == 4);

  for (const char* name : {"fork.rg", "loop.rg", "split.rg"}) {
    const RGraph g = parse_rgraph(slurp(name));
    const ScalarField2 k = field_of_graph(g);
    auto r = reeb_of_complex(k);
    CHECK(is_isomorphic(share(r.graph), share(g)).has_value());
    CHECK(num_components(r.graph) == num_components(k));
  }
}

TEST_CASE("dot export") {
  const std::string line = export_dot(line_graph(0, 1));
  CHECK(std::count(line.begin(), line.end(), '\n') > 0);
  CHECK(line.find("\"v0\" -- \"v1\"") != std::string::npos);
  const std::string loop = export_dot(loop_graph(0, 1), {false});
  std::size_t arcs = 0;
  for (std::size_t p = loop.find(" -- "); p != std::string::npos; p = loop.find(" -- ", p + 1)) ++arcs;
  CHECK(arcs == 2);
  CHECK(loop.find("rank=same") == std::string::npos);
  CHECK(export_dot(parse_rgraph(slurp("fork.rg"))) == slurp("fork.dot"));
}
