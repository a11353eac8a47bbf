#include "doctest.h"

#include "reebcat/isomorphism.hpp"

using namespace reebcat;

namespace {

RGraphMorphism quotient(GraphRef loop, GraphRef line) {
  RGraphMorphism m{loop, line, {Cell::vertex(0), Cell::vertex(1)}, {{0}, {0}}};
  return m;
}

}  // namespace

TEST_CASE("validate_morphism") {
  GraphRef loop = share(loop_graph(0, 1));
  GraphRef line = share(line_graph(0, 1));
  CHECK(validate_morphism(identity_morphism(loop)).ok());
  CHECK(validate_morphism(quotient(loop, line)).ok());

  RGraph two = refine(line_graph(0, 1), {Rational(1, 2)}).fine;
  GraphRef path = share(two);
  RGraphMorphism bad{loop, path, {Cell::vertex(0), Cell::vertex(*two.find_vertex("v1"))}, {{0, 1}, {0}}};
  auto report = validate_morphism(bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].id == "e1");
}

TEST_CASE("refined form and composition") {
  GraphRef loop = share(loop_graph(0, 1));
  GraphRef line = share(line_graph(0, 1));
  auto q = quotient(loop, line);
  auto r = refine_morphism(q, {Rational(1, 2)});
  CHECK(r.edge_map.size() == 4);
  CHECK(equal(unrefine_morphism(r), q));

  auto id = refine_morphism(identity_morphism(loop));
  CHECK(id.vertex_map == std::vector<std::size_t>{0, 1});

  CHECK(equal(compose(q, identity_morphism(line)), q));
  CHECK(equal(compose(identity_morphism(loop), q), q));
  RGraphMorphism swap{loop, loop, {Cell::vertex(0), Cell::vertex(1)}, {{1}, {0}}};
  CHECK(is_isomorphism(swap));
  CHECK_FALSE(equal(swap, identity_morphism(loop)));
  CHECK(equal(compose(swap, q), q));
  CHECK(equal(compose(swap, swap), identity_morphism(loop)));
  CHECK(equal(inverse(swap), swap));
  CHECK_FALSE(is_isomorphism(q));
}

TEST_CASE("vertex to edge images") {
  GraphRef point = share(point_graph(Rational(1, 2)));
  GraphRef line = share(line_graph(0, 1));
  RGraphMorphism m{point, line, {Cell::edge(0)}, {}};
  CHECK(validate_morphism(m).ok());
  RGraphMorphism wrong{point, line, {Cell::vertex(0)}, {}};
  CHECK_FALSE(validate_morphism(wrong).ok());
  auto r = refine_morphism(m);
  CHECK(r.target.fine.num_levels() == 3);
  CHECK(r.target.fine.value(r.vertex_map[0]) == Rational(1, 2));
}
