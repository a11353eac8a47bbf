#include "reebcat/rgraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "reebcat/detail/util.hpp"

namespace reebcat {

RGraph::RGraph(std::vector<Rational> criticals, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : criticals_(std::move(criticals)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  level_members_.resize(criticals_.size());
  slot_members_.resize(num_slots());
  up_.resize(vertices_.size());
  down_.resize(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    vertex_ids_.emplace(vertices_[v].id, v);
    if (vertices_[v].level < level_members_.size()) level_members_[vertices_[v].level].push_back(v);
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    edge_ids_.emplace(edge.id, e);
    if (edge.slot < slot_members_.size()) slot_members_[edge.slot].push_back(e);
    if (edge.lower < vertices_.size()) up_[edge.lower].push_back(e);
    if (edge.upper < vertices_.size()) down_[edge.upper].push_back(e);
  }
}

const Rational& RGraph::low(Cell c) const {
  return c.is_vertex() ? value(c.index) : criticals_[edges_[c.index].slot];
}

const Rational& RGraph::high(Cell c) const {
  return c.is_vertex() ? value(c.index) : criticals_[edges_[c.index].slot + 1];
}

bool RGraph::meets(Cell c, const Rational& lo, const Rational& hi) const {
  if (c.is_vertex()) {
    const Rational& x = value(c.index);
    return lo <= x && x <= hi;
  }
  return low(c) < hi && high(c) > lo;
}

bool RGraph::contains_value(Cell c, const Rational& x) const {
  if (c.is_vertex()) return value(c.index) == x;
  return low(c) < x && x < high(c);
}

std::optional<std::size_t> RGraph::find_vertex(std::string_view id) const {
  auto it = vertex_ids_.find(std::string(id));
  if (it == vertex_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RGraph::find_edge(std::string_view id) const {
  auto it = edge_ids_.find(std::string(id));
  if (it == edge_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RGraph::find_level(const Rational& value) const {
  auto it = std::lower_bound(criticals_.begin(), criticals_.end(), value);
  if (it == criticals_.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - criticals_.begin());
}

const std::string& RGraph::cell_id(Cell c) const {
  return c.is_vertex() ? vertices_[c.index].id : edges_[c.index].id;
}

bool operator==(const RGraph& a, const RGraph& b) {
  if (a.criticals_ != b.criticals_ || a.vertices_.size() != b.vertices_.size() ||
      a.edges_.size() != b.edges_.size()) {
    return false;
  }
  for (std::size_t v = 0; v < a.vertices_.size(); ++v) {
    if (a.vertices_[v].id != b.vertices_[v].id || a.vertices_[v].level != b.vertices_[v].level) return false;
  }
  for (std::size_t e = 0; e < a.edges_.size(); ++e) {
    const Edge& x = a.edges_[e];
    const Edge& y = b.edges_[e];
    if (x.id != y.id || x.slot != y.slot || x.lower != y.lower || x.upper != y.upper) return false;
  }
  return true;
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.id << ": " << v.rule << "\n";
  return os.str();
}

ValidationReport validate(const RGraph& g) {
  ValidationReport report;
  auto add = [&](std::string id, std::string rule) { report.violations.push_back({std::move(id), std::move(rule)}); };

  const auto& s = g.criticals();
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i - 1] < s[i])) add(s[i].str(), "critical values not strictly increasing");
  }
  if (s.empty() && (g.num_vertices() > 0 || g.num_edges() > 0)) add("<graph>", "cells without critical values");

  detail::IdPool ids;
  for (const auto& v : g.vertices()) {
    if (!ids.take(v.id)) add(v.id, "duplicate id");
    if (v.level >= g.num_levels()) add(v.id, "vertex level out of range");
  }
  for (const auto& e : g.edges()) {
    if (!ids.take(e.id)) add(e.id, "duplicate id");
    if (e.slot >= g.num_slots()) {
      add(e.id, "edge slot out of range");
      continue;
    }
    if (e.lower == kNoIndex || e.upper == kNoIndex) {
      add(e.id, "partial attaching map");
      continue;
    }
    if (e.lower >= g.num_vertices() || e.upper >= g.num_vertices()) {
      add(e.id, "attaching map to unknown vertex");
      continue;
    }
    if (g.vertex(e.lower).level != e.slot) add(e.id, "lower attachment not on the slot's lower level");
    if (g.vertex(e.upper).level != e.slot + 1) add(e.id, "upper attachment not on the slot's upper level");
  }
  return report;
}

std::vector<Rational> merge_values(std::vector<Rational> a, const std::vector<Rational>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

namespace {

std::size_t level_of(const std::vector<Rational>& values, const Rational& x) {
  return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
}

/// Appends the chain of segments for an edge running from vertex `lo` at
/// level `lo_level` to vertex `hi` at level `hi_level`, creating vertices
/// on the intermediate levels. Returns the new edge indices.
std::vector<std::size_t> emit_chain(const std::string& id, std::size_t lo, std::size_t lo_level,
                                    std::size_t hi, std::size_t hi_level, std::vector<Vertex>& vertices,
                                    std::vector<Edge>& edges, detail::IdPool& pool,
                                    std::vector<std::size_t>* new_vertices = nullptr) {
  std::vector<std::size_t> segments;
  if (hi_level == lo_level + 1) {
    segments.push_back(edges.size());
    edges.push_back({pool.fresh(id), lo_level, lo, hi});
    return segments;
  }
  std::size_t below = lo;
  for (std::size_t level = lo_level; level < hi_level; ++level) {
    std::size_t above = hi;
    if (level + 1 < hi_level) {
      above = vertices.size();
      vertices.push_back({pool.fresh(id + "@" + std::to_string(level + 1 - lo_level)), level + 1});
      if (new_vertices) new_vertices->push_back(above);
    }
    segments.push_back(edges.size());
    edges.push_back({pool.fresh(id + ":" + std::to_string(level - lo_level)), level, below, above});
    below = above;
  }
  return segments;
}

}  // namespace

Subdivision refine(const RGraph& g, const std::vector<Rational>& extra) {
  Subdivision out;
  out.coarse = g;
  std::vector<Rational> values = merge_values(g.criticals(), extra);

  detail::IdPool pool;
  for (const auto& v : g.vertices()) pool.take(v.id);
  // Unsplit edges keep their id; reserve those first so split pieces avoid them.
  std::vector<bool> split(g.num_edges(), false);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    std::size_t lo = level_of(values, g.level_value(edge.slot));
    std::size_t hi = level_of(values, g.level_value(edge.slot + 1));
    split[e] = hi != lo + 1;
    if (!split[e]) pool.take(edge.id);
  }

  std::vector<Vertex> vertices;
  vertices.reserve(g.num_vertices());
  for (const auto& v : g.vertices()) {
    vertices.push_back({v.id, level_of(values, g.level_value(v.level))});
  }
  out.vertex_image.resize(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out.vertex_image[v] = v;
  out.vertex_origin.reserve(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out.vertex_origin.push_back(Cell::vertex(v));

  std::vector<Edge> edges;
  out.edge_segments.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    std::size_t lo = level_of(values, g.level_value(edge.slot));
    std::size_t hi = level_of(values, g.level_value(edge.slot + 1));
    if (!split[e]) {
      out.edge_segments[e].push_back(edges.size());
      edges.push_back({edge.id, lo, edge.lower, edge.upper});
      out.edge_origin.push_back(e);
      continue;
    }
    std::vector<std::size_t> created;
    out.edge_segments[e] = emit_chain(edge.id, edge.lower, lo, edge.upper, hi, vertices, edges, pool, &created);
    for ([[maybe_unused]] std::size_t v : created) out.vertex_origin.push_back(Cell::edge(e));
    for (std::size_t k = 0; k < out.edge_segments[e].size(); ++k) out.edge_origin.push_back(e);
  }
  out.fine = RGraph(std::move(values), std::move(vertices), std::move(edges));
  return out;
}

Subdivision reduce(const RGraph& g) {
  Subdivision out;
  out.fine = g;
  const std::size_t n = g.num_levels();
  std::vector<bool> keep(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    bool removable = true;
    for (std::size_t v : g.level(i)) {
      if (g.up_edges(v).size() != 1 || g.down_edges(v).size() != 1) {
        removable = false;
        break;
      }
    }
    keep[i] = !removable;
  }
  if (n > 0 && std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) keep[0] = true;

  std::vector<Rational> values;
  std::vector<std::size_t> new_level(n, kNoIndex);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) {
      new_level[i] = values.size();
      values.push_back(g.level_value(i));
    }
  }

  std::vector<Vertex> vertices;
  std::vector<std::size_t> coarse_vertex(g.num_vertices(), kNoIndex);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!keep[g.vertex(v).level]) continue;
    coarse_vertex[v] = vertices.size();
    out.vertex_image.push_back(v);
    vertices.push_back({g.vertex(v).id, new_level[g.vertex(v).level]});
  }

  std::vector<Edge> edges;
  out.edge_origin.assign(g.num_edges(), kNoIndex);
  out.vertex_origin.assign(g.num_vertices(), Cell{});
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (coarse_vertex[v] != kNoIndex) out.vertex_origin[v] = Cell::vertex(coarse_vertex[v]);
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!keep[g.edge(e).slot]) continue;
    std::vector<std::size_t> chain{e};
    std::size_t top = g.edge(e).upper;
    while (!keep[g.vertex(top).level]) {
      std::size_t next = g.up_edges(top).front();
      out.vertex_origin[top] = Cell::edge(edges.size());
      chain.push_back(next);
      top = g.edge(next).upper;
    }
    std::size_t index = edges.size();
    for (std::size_t c : chain) out.edge_origin[c] = index;
    edges.push_back({g.edge(e).id, new_level[g.edge(e).slot], coarse_vertex[g.edge(e).lower], coarse_vertex[top]});
    out.edge_segments.push_back(std::move(chain));
  }
  out.coarse = RGraph(std::move(values), std::move(vertices), std::move(edges));
  return out;
}

CommonRefinement common_refinement(const RGraph& g, const RGraph& h) {
  return {refine(g, h.criticals()), refine(h, g.criticals())};
}

std::size_t num_components(const RGraph& g) {
  detail::DisjointSets sets(g.num_vertices());
  std::size_t count = g.num_vertices();
  for (const auto& e : g.edges()) {
    if (e.lower < g.num_vertices() && e.upper < g.num_vertices() && sets.unite(e.lower, e.upper)) --count;
  }
  return count;
}

std::optional<Rational> minimum_gap(const RGraph& g) {
  const auto& s = g.criticals();
  if (s.size() < 2) return std::nullopt;
  Rational best = s[1] - s[0];
  for (std::size_t i = 2; i < s.size(); ++i) best = std::min(best, s[i] - s[i - 1]);
  return best;
}

GraphBuilder& GraphBuilder::criticals(std::vector<Rational> values) {
  criticals_ = std::move(values);
  has_criticals_ = true;
  return *this;
}

GraphBuilder& GraphBuilder::vertex(std::string id, Rational value) {
  vertices_.emplace_back(std::move(id), value);
  return *this;
}

GraphBuilder& GraphBuilder::edge(std::string id, std::string a, std::string b) {
  edges_.emplace_back(std::move(id), std::move(a), std::move(b));
  return *this;
}

RGraph GraphBuilder::build(bool strict_criticals) const {
  std::vector<Rational> values = criticals_;
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw std::invalid_argument("duplicate critical value");
  }
  std::vector<Rational> vertex_values;
  for (const auto& [id, value] : vertices_) {
    if (strict_criticals && has_criticals_ && !std::binary_search(values.begin(), values.end(), value)) {
      throw std::invalid_argument("vertex " + id + " has value " + value.str() + " not listed in criticals");
    }
    vertex_values.push_back(value);
  }
  values = merge_values(std::move(values), vertex_values);

  detail::IdPool pool;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Vertex> vertices;
  for (const auto& [id, value] : vertices_) {
    if (!pool.take(id)) throw std::invalid_argument("duplicate id " + id);
    index.emplace(id, vertices.size());
    vertices.push_back({id, level_of(values, value)});
  }
  for (const auto& [id, a, b] : edges_) {
    if (!pool.take(id)) throw std::invalid_argument("duplicate id " + id);
  }
  std::vector<Edge> edges;
  for (const auto& [id, a, b] : edges_) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw std::invalid_argument("edge " + id + " references unknown vertex " + a);
    if (ib == index.end()) throw std::invalid_argument("edge " + id + " references unknown vertex " + b);
    std::size_t lo = ia->second;
    std::size_t hi = ib->second;
    if (vertices[lo].level == vertices[hi].level) {
      throw std::invalid_argument("edge " + id + " joins vertices of equal value");
    }
    if (vertices[lo].level > vertices[hi].level) std::swap(lo, hi);
    if (vertices[hi].level == vertices[lo].level + 1) {
      edges.push_back({id, vertices[lo].level, lo, hi});
    } else {
      emit_chain(id, lo, vertices[lo].level, hi, vertices[hi].level, vertices, edges, pool);
    }
  }
  return RGraph(std::move(values), std::move(vertices), std::move(edges));
}

RGraph line_graph(const Rational& a, const Rational& b) {
  return RGraph({a, b}, {{"v0", 0}, {"v1", 1}}, {{"e0", 0, 0, 1}});
}

RGraph loop_graph(const Rational& a, const Rational& b) {
  return RGraph({a, b}, {{"v0", 0}, {"v1", 1}}, {{"e0", 0, 0, 1}, {"e1", 0, 0, 1}});
}

RGraph point_graph(const Rational& a) { return RGraph({a}, {{"v0", 0}}, {}); }

RGraph fork_graph() {
  return RGraph({Rational(-1), Rational(0), Rational(1)}, {{"u", 0}, {"w", 1}, {"x", 2}, {"y", 2}},
                {{"uw", 0, 0, 1}, {"wx", 1, 1, 2}, {"wy", 1, 1, 3}});
}

RGraph disjoint_union(const RGraph& g, const RGraph& h) {
  GraphBuilder builder;
  for (const auto& v : g.vertices()) builder.vertex("a:" + v.id, g.level_value(v.level));
  for (const auto& v : h.vertices()) builder.vertex("b:" + v.id, h.level_value(v.level));
  for (const auto& e : g.edges()) builder.edge("a:" + e.id, "a:" + g.vertex(e.lower).id, "a:" + g.vertex(e.upper).id);
  for (const auto& e : h.edges()) builder.edge("b:" + e.id, "b:" + h.vertex(e.lower).id, "b:" + h.vertex(e.upper).id);
  builder.criticals(merge_values(g.criticals(), h.criticals()));
  return builder.build();
}

}  // namespace reebcat

namespace reebcat {

Cell to_fine(const Subdivision& s, Cell coarse, const Rational& x) {
  if (coarse.is_vertex()) return Cell::vertex(s.vertex_image[coarse.index]);
  for (std::size_t seg : s.edge_segments[coarse.index]) {
    const Cell c = Cell::edge(seg);
    if (s.fine.contains_value(c, x)) return c;
    if (s.fine.high(c) == x) return Cell::vertex(s.fine.edge(seg).upper);
  }
  throw std::logic_error("value " + x.str() + " is not on edge " + s.coarse.cell_id(coarse));
}

Cell to_coarse(const Subdivision& s, Cell fine) {
  if (fine.is_vertex()) return s.vertex_origin[fine.index];
  return Cell::edge(s.edge_origin[fine.index]);
}

}  // namespace reebcat
