#include "reebcat/morphism.hpp"

#include <algorithm>
#include <sstream>

namespace reebcat {

bool same_graph(const GraphRef& a, const GraphRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Cell apply(const RGraphMorphism& m, Cell c, const Rational& x) {
  if (c.is_vertex()) return m.vertex_map[c.index];
  const RGraph& t = *m.target;
  for (std::size_t e : m.edge_map[c.index]) {
    const Cell cell = Cell::edge(e);
    if (t.contains_value(cell, x)) return cell;
    if (t.high(cell) == x) return Cell::vertex(t.edge(e).upper);
  }
  throw InternalError("no image for value " + x.str() + " on edge " + m.source->cell_id(c));
}

RGraphMorphism from_point_map(GraphRef source, GraphRef target, const PointMap& map,
                              const std::vector<Rational>& extra_samples) {
  RGraphMorphism m;
  m.source = std::move(source);
  m.target = std::move(target);
  const RGraph& s = *m.source;
  std::vector<Rational> samples =
      extra_samples.empty() ? m.target->criticals() : merge_values(m.target->criticals(), extra_samples);

  m.vertex_map.reserve(s.num_vertices());
  for (std::size_t v = 0; v < s.num_vertices(); ++v) m.vertex_map.push_back(map(Cell::vertex(v), s.value(v)));

  m.edge_map.resize(s.num_edges());
  std::vector<Rational> points;
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    const Cell cell = Cell::edge(e);
    const Rational& lo = s.low(cell);
    const Rational& hi = s.high(cell);
    points.clear();
    points.push_back(lo);
    for (auto it = std::upper_bound(samples.begin(), samples.end(), lo); it != samples.end() && *it < hi; ++it) {
      points.push_back(*it);
    }
    points.push_back(hi);
    auto& path = m.edge_map[e];
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      const Cell image = map(cell, midpoint(points[k], points[k + 1]));
      if (!image.is_edge()) {
        throw InternalError("point map sends an interior point of edge " + s.edge(e).id + " to a vertex");
      }
      if (path.empty() || path.back() != image.index) path.push_back(image.index);
    }
  }
  auto report = validate_morphism(m);
  if (!report.ok()) throw InternalError("point map does not induce a morphism:\n" + report.describe());
  return m;
}

ValidationReport validate_morphism(const RGraphMorphism& m) {
  ValidationReport report;
  auto add = [&](std::string id, std::string rule) { report.violations.push_back({std::move(id), std::move(rule)}); };
  if (!m.source || !m.target) {
    add("<morphism>", "missing source or target");
    return report;
  }
  const RGraph& s = *m.source;
  const RGraph& t = *m.target;
  if (m.vertex_map.size() != s.num_vertices()) add("<morphism>", "vertex map size differs from source");
  if (m.edge_map.size() != s.num_edges()) add("<morphism>", "edge map size differs from source");
  if (!report.ok()) return report;

  auto image_ok = [&](Cell image) {
    return image.is_vertex() ? image.index < t.num_vertices() : image.index < t.num_edges();
  };
  for (std::size_t v = 0; v < s.num_vertices(); ++v) {
    const Cell image = m.vertex_map[v];
    if (!image_ok(image)) {
      add(s.vertex(v).id, "image is not a target cell");
      continue;
    }
    if (!t.contains_value(image, s.value(v))) add(s.vertex(v).id, "image does not lie at the vertex value");
  }
  if (!report.ok()) return report;

  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    const auto& path = m.edge_map[e];
    const std::string& id = s.edge(e).id;
    if (path.empty()) {
      add(id, "empty image path");
      continue;
    }
    if (std::any_of(path.begin(), path.end(), [&](std::size_t p) { return p >= t.num_edges(); })) {
      add(id, "image path leaves the target");
      continue;
    }
    bool chained = true;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      if (t.edge(path[k]).upper != t.edge(path[k + 1]).lower) chained = false;
    }
    if (!chained) {
      add(id, "image path is not a chain");
      continue;
    }
    const Cell start = m.vertex_map[s.edge(e).lower];
    const Cell end = m.vertex_map[s.edge(e).upper];
    bool start_ok = start.is_vertex() ? t.edge(path.front()).lower == start.index : path.front() == start.index;
    bool end_ok = end.is_vertex() ? t.edge(path.back()).upper == end.index : path.back() == end.index;
    if (!start_ok) add(id, "image path does not start at the image of the lower vertex");
    if (!end_ok) add(id, "image path does not end at the image of the upper vertex");
  }
  return report;
}

RGraphMorphism identity_morphism(GraphRef g) {
  RGraphMorphism m;
  m.source = g;
  m.target = g;
  for (std::size_t v = 0; v < g->num_vertices(); ++v) m.vertex_map.push_back(Cell::vertex(v));
  for (std::size_t e = 0; e < g->num_edges(); ++e) m.edge_map.push_back({e});
  return m;
}

RGraphMorphism compose(const RGraphMorphism& first, const RGraphMorphism& second) {
  if (!same_graph(first.target, second.source)) {
    throw std::invalid_argument("cannot compose: target of the first map is not the source of the second");
  }
  return from_point_map(first.source, second.target,
                        [&](Cell c, const Rational& x) { return apply(second, apply(first, c, x), x); });
}

RefinedMorphism refine_morphism(const RGraphMorphism& m, const std::vector<Rational>& extra) {
  std::vector<Rational> values = merge_values(merge_values(m.source->criticals(), m.target->criticals()), extra);
  RefinedMorphism r;
  r.source_graph = m.source;
  r.target_graph = m.target;
  r.source = refine(*m.source, values);
  r.target = refine(*m.target, values);
  const RGraph& fs = r.source.fine;
  for (std::size_t v = 0; v < fs.num_vertices(); ++v) {
    const Rational& x = fs.value(v);
    Cell image = to_fine(r.target, apply(m, to_coarse(r.source, Cell::vertex(v)), x), x);
    if (!image.is_vertex()) throw InternalError("refined vertex image is not a vertex");
    r.vertex_map.push_back(image.index);
  }
  for (std::size_t e = 0; e < fs.num_edges(); ++e) {
    const Cell cell = Cell::edge(e);
    const Rational x = midpoint(fs.low(cell), fs.high(cell));
    Cell image = to_fine(r.target, apply(m, to_coarse(r.source, cell), x), x);
    if (!image.is_edge()) throw InternalError("refined edge image is not an edge");
    r.edge_map.push_back(image.index);
  }
  return r;
}

RGraphMorphism unrefine_morphism(const RefinedMorphism& r) {
  GraphRef source = r.source_graph ? r.source_graph : share(r.source.coarse);
  GraphRef target = r.target_graph ? r.target_graph : share(r.target.coarse);
  return from_point_map(source, target, [&](Cell c, const Rational& x) {
    const Cell fine = to_fine(r.source, c, x);
    const Cell image = fine.is_vertex() ? Cell::vertex(r.vertex_map[fine.index]) : Cell::edge(r.edge_map[fine.index]);
    return to_coarse(r.target, image);
  });
}

std::optional<std::string> first_difference(const RGraphMorphism& a, const RGraphMorphism& b) {
  if (!same_graph(a.source, b.source) || !same_graph(a.target, b.target)) return std::string("<shape>");
  RefinedMorphism ra = refine_morphism(a);
  RefinedMorphism rb = refine_morphism(b);
  for (std::size_t v = 0; v < ra.vertex_map.size(); ++v) {
    if (ra.vertex_map[v] != rb.vertex_map[v]) {
      return ra.source.coarse.cell_id(to_coarse(ra.source, Cell::vertex(v)));
    }
  }
  for (std::size_t e = 0; e < ra.edge_map.size(); ++e) {
    if (ra.edge_map[e] != rb.edge_map[e]) return ra.source.coarse.cell_id(to_coarse(ra.source, Cell::edge(e)));
  }
  return std::nullopt;
}

bool equal(const RGraphMorphism& a, const RGraphMorphism& b) { return !first_difference(a, b).has_value(); }

namespace {

bool is_permutation_of(const std::vector<std::size_t>& map, std::size_t n) {
  if (map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t i : map) {
    if (i >= n || hit[i]) return false;
    hit[i] = true;
  }
  return true;
}

}  // namespace

bool is_isomorphism(const RGraphMorphism& m) {
  RefinedMorphism r = refine_morphism(m);
  return is_permutation_of(r.vertex_map, r.target.fine.num_vertices()) &&
         is_permutation_of(r.edge_map, r.target.fine.num_edges());
}

RGraphMorphism inverse(const RGraphMorphism& m) {
  RefinedMorphism r = refine_morphism(m);
  if (!is_permutation_of(r.vertex_map, r.target.fine.num_vertices()) ||
      !is_permutation_of(r.edge_map, r.target.fine.num_edges())) {
    throw std::invalid_argument("morphism is not an isomorphism");
  }
  std::vector<std::size_t> inv_v(r.vertex_map.size());
  std::vector<std::size_t> inv_e(r.edge_map.size());
  for (std::size_t i = 0; i < r.vertex_map.size(); ++i) inv_v[r.vertex_map[i]] = i;
  for (std::size_t i = 0; i < r.edge_map.size(); ++i) inv_e[r.edge_map[i]] = i;
  return from_point_map(m.target, m.source, [&](Cell c, const Rational& x) {
    const Cell fine = to_fine(r.target, c, x);
    const Cell pre = fine.is_vertex() ? Cell::vertex(inv_v[fine.index]) : Cell::edge(inv_e[fine.index]);
    return to_coarse(r.source, pre);
  });
}

RGraphMorphism coarse_to_fine(const Subdivision& s, GraphRef coarse, GraphRef fine) {
  if (!coarse) coarse = share(s.coarse);
  if (!fine) fine = share(s.fine);
  return from_point_map(coarse, fine, [&](Cell c, const Rational& x) { return to_fine(s, c, x); });
}

RGraphMorphism fine_to_coarse(const Subdivision& s, GraphRef fine, GraphRef coarse) {
  if (!coarse) coarse = share(s.coarse);
  if (!fine) fine = share(s.fine);
  return from_point_map(fine, coarse, [&](Cell c, const Rational&) { return to_coarse(s, c); });
}

std::string describe(const RGraphMorphism& m) {
  std::ostringstream os;
  const RGraph& s = *m.source;
  const RGraph& t = *m.target;
  for (std::size_t v = 0; v < s.num_vertices(); ++v) {
    os << "vertex " << s.vertex(v).id << " -> " << t.cell_id(m.vertex_map[v]) << "\n";
  }
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    os << "edge " << s.edge(e).id << " ->";
    for (std::size_t p : m.edge_map[e]) os << " " << t.edge(p).id;
    os << "\n";
  }
  return os.str();
}

}  // namespace reebcat
