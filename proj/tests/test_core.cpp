#include "doctest.h"

#include "reebcat/isomorphism.hpp"

using namespace reebcat;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

}  // namespace

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("1/2") == q(1, 2));
  CHECK(Rational::parse("-0.25") == q(-1, 4));
  CHECK(Rational::parse("1e-2") == q(1, 100));
  CHECK(Rational::parse("2/4")->str() == "1/2");
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("abc").has_value());
  CHECK(q(1, 3) + q(1, 6) == q(1, 2));
  CHECK(q(1, 3) < q(1, 2));
  CHECK(midpoint(q(0), q(1)) == q(1, 2));
}

TEST_CASE("validate") {
  CHECK(validate(line_graph(0, 1)).ok());
  CHECK(validate(RGraph{}).ok());
  RGraph bad({q(0), q(1)}, {{"v0", 0}, {"v1", 1}}, {{"e0", 0, kNoIndex, 1}});
  auto report = validate(bad);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].id == "e0");
  CHECK(report.violations[0].rule == "partial attaching map");
}

TEST_CASE("refine and reduce") {
  auto r = refine(line_graph(0, 1), {q(1, 2)});
  CHECK(r.fine.criticals() == std::vector<Rational>{q(0), q(1, 2), q(1)});
  CHECK(r.fine.num_edges() == 2);
  CHECK(r.edge_segments[0].size() == 2);
  CHECK(validate(r.fine).ok());
  CHECK(refine(line_graph(0, 1), {}).fine == line_graph(0, 1));

  auto loop = refine(loop_graph(0, 1), {q(1, 3), q(2, 3)});
  CHECK(loop.fine.num_levels() == 4);
  CHECK(loop.fine.num_edges() == 6);
  auto back = reduce(loop.fine);
  CHECK(back.coarse.num_levels() == 2);
  CHECK(is_isomorphic(share(back.coarse), share(loop_graph(0, 1))).has_value());
  CHECK(reduce(loop_graph(0, 1)).coarse == loop_graph(0, 1));

  auto ten = refine(line_graph(0, 10), {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(reduce(ten.fine).coarse.num_levels() == 2);
}

TEST_CASE("common refinement, components, gap") {
  auto c = common_refinement(line_graph(0, 1), line_graph(q(1, 2), q(3, 2)));
  CHECK(c.first.fine.criticals().size() == 4);
  CHECK(c.second.fine.criticals().size() == 4);
  auto d = common_refinement(loop_graph(0, 1), point_graph(q(1, 2)));
  CHECK(validate(d.first.fine).ok());
  CHECK(validate(d.second.fine).ok());
  CHECK(d.second.fine.num_edges() == 0);

  CHECK(num_components(line_graph(0, 1)) == 1);
  CHECK(num_components(disjoint_union(line_graph(0, 1), line_graph(2, 3))) == 2);
  CHECK(num_components(loop_graph(0, 1)) == 1);
  CHECK(minimum_gap(fork_graph()) == q(1));
  CHECK_FALSE(minimum_gap(point_graph(0)).has_value());
}

TEST_CASE("isomorphism") {
  GraphRef loop = share(loop_graph(0, 1));
  RGraph swapped({q(0), q(1)}, {{"v0", 0}, {"v1", 1}}, {{"e1", 0, 0, 1}, {"e0", 0, 0, 1}});
  auto w = is_isomorphic(loop, share(swapped));
  REQUIRE(w.has_value());
  CHECK(validate_morphism(*w).ok());
  CHECK(is_isomorphism(*w));
  CHECK_FALSE(is_isomorphic(loop, share(line_graph(0, 1))).has_value());
  auto sub = refine(fork_graph(), {q(1, 2)});
  CHECK(is_isomorphic(share(sub.fine), share(fork_graph())).has_value());
}
