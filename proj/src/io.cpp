#include "reebcat/io.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "reebcat/detail/util.hpp"

namespace reebcat {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string w; in >> w;) line.words.push_back(std::move(w));
    if (!line.words.empty()) out.push_back(std::move(line));
    start = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw ParseError("line " + std::to_string(line.number) + ": " + what);
}

void expect_words(const Line& line, std::size_t n) {
  if (line.words.size() != n) {
    fail(line, "'" + line.words[0] + "' takes " + std::to_string(n - 1) + " fields, got " +
                   std::to_string(line.words.size() - 1));
  }
}

Rational value_at(const Line& line, const std::string& word) {
  auto r = Rational::parse(word);
  if (!r) fail(line, "bad number '" + word + "'");
  return *r;
}

std::string str(const Rational& r) { return r.str(); }

std::size_t position_of(const std::vector<Rational>& levels, const Rational& x) {
  auto it = std::lower_bound(levels.begin(), levels.end(), x);
  const auto i = static_cast<std::size_t>(it - levels.begin());
  if (it != levels.end() && *it == x) return 2 * i;
  if (i == 0 || i == levels.size()) return kNoIndex;
  return 2 * i - 1;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto r = Rational::parse(text);
  if (!r) throw ParseError("bad number '" + std::string(text) + "'");
  return *r;
}

// ---------------------------------------------------------------------------
// R-graph documents

RGraph parse_rgraph(std::string_view text) {
  GraphBuilder builder;
  std::map<std::string, Rational> vertex_values;
  std::set<std::string> ids;
  bool has_criticals = false;
  for (const Line& line : tokenize(text)) {
    const std::string& kind = line.words[0];
    if (kind == "criticals") {
      if (has_criticals) fail(line, "second criticals line");
      has_criticals = true;
      std::vector<Rational> values;
      for (std::size_t k = 1; k < line.words.size(); ++k) values.push_back(value_at(line, line.words[k]));
      if (!std::is_sorted(values.begin(), values.end()) ||
          std::adjacent_find(values.begin(), values.end()) != values.end()) {
        fail(line, "criticals must be strictly increasing");
      }
      builder.criticals(std::move(values));
    } else if (kind == "vertex") {
      expect_words(line, 3);
      if (!ids.insert(line.words[1]).second) fail(line, "duplicate id " + line.words[1]);
      const Rational v = value_at(line, line.words[2]);
      vertex_values.emplace(line.words[1], v);
      builder.vertex(line.words[1], v);
    } else if (kind == "edge") {
      expect_words(line, 4);
      if (!ids.insert(line.words[1]).second) fail(line, "duplicate id " + line.words[1]);
      auto a = vertex_values.find(line.words[2]);
      auto b = vertex_values.find(line.words[3]);
      if (a == vertex_values.end()) fail(line, "unknown vertex " + line.words[2]);
      if (b == vertex_values.end()) fail(line, "unknown vertex " + line.words[3]);
      if (a->second == b->second) fail(line, "edge " + line.words[1] + " joins vertices of equal value");
      builder.edge(line.words[1], line.words[2], line.words[3]);
    } else {
      fail(line, "unknown record '" + kind + "'");
    }
  }
  try {
    return builder.build(true);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string emit_rgraph(const RGraph& g) {
  std::ostringstream out;
  out << "criticals";
  for (const Rational& a : g.criticals()) out << ' ' << str(a);
  out << '\n';
  for (const Vertex& v : g.vertices()) out << "vertex " << v.id << ' ' << str(g.level_value(v.level)) << '\n';
  for (const Edge& e : g.edges()) {
    out << "edge " << e.id << ' ' << g.vertex(e.lower).id << ' ' << g.vertex(e.upper).id << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Morphism documents

RGraphMorphism parse_morphism(std::string_view text, GraphRef source, GraphRef target) {
  const RGraph& s = *source;
  const RGraph& t = *target;
  RGraphMorphism m{source, target, std::vector<Cell>(s.num_vertices()),
                   std::vector<std::vector<std::size_t>>(s.num_edges())};
  std::vector<bool> seen_v(s.num_vertices(), false);
  std::vector<bool> seen_e(s.num_edges(), false);
  for (const Line& line : tokenize(text)) {
    const std::string& kind = line.words[0];
    if (kind == "vertex") {
      expect_words(line, 3);
      auto v = s.find_vertex(line.words[1]);
      if (!v) fail(line, "unknown source vertex " + line.words[1]);
      if (seen_v[*v]) fail(line, "vertex " + line.words[1] + " mapped twice");
      seen_v[*v] = true;
      if (auto y = t.find_vertex(line.words[2])) {
        m.vertex_map[*v] = Cell::vertex(*y);
      } else if (auto z = t.find_edge(line.words[2])) {
        m.vertex_map[*v] = Cell::edge(*z);
      } else {
        fail(line, "unknown target cell " + line.words[2]);
      }
    } else if (kind == "edge") {
      if (line.words.size() < 3) fail(line, "edge needs a target path");
      auto e = s.find_edge(line.words[1]);
      if (!e) fail(line, "unknown source edge " + line.words[1]);
      if (seen_e[*e]) fail(line, "edge " + line.words[1] + " mapped twice");
      seen_e[*e] = true;
      for (std::size_t k = 2; k < line.words.size(); ++k) {
        auto z = t.find_edge(line.words[k]);
        if (!z) fail(line, "unknown target edge " + line.words[k]);
        m.edge_map[*e].push_back(*z);
      }
    } else {
      fail(line, "unknown record '" + kind + "'");
    }
  }
  for (std::size_t v = 0; v < s.num_vertices(); ++v) {
    if (!seen_v[v]) throw ParseError("no image for vertex " + s.vertex(v).id);
  }
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    if (!seen_e[e]) throw ParseError("no image for edge " + s.edge(e).id);
  }
  return m;
}

std::string emit_morphism(const RGraphMorphism& m) {
  const RGraph& s = *m.source;
  const RGraph& t = *m.target;
  std::ostringstream out;
  for (std::size_t v = 0; v < s.num_vertices(); ++v) {
    out << "vertex " << s.vertex(v).id << ' ' << t.cell_id(m.vertex_map[v]) << '\n';
  }
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    out << "edge " << s.edge(e).id;
    for (std::size_t z : m.edge_map[e]) out << ' ' << t.edge(z).id;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Scalar fields

ScalarField2 parse_field(std::string_view text) {
  ScalarField2 k;
  std::unordered_map<std::string, std::size_t> vertex_index;
  std::set<std::string> ids;
  for (const Line& line : tokenize(text)) {
    const std::string& kind = line.words[0];
    if (kind != "v" && kind != "e" && kind != "t") fail(line, "unknown record '" + kind + "'");
    const std::size_t arity = kind == "v" ? 0 : kind == "e" ? 2 : 3;
    expect_words(line, kind == "v" ? 3 : 2 + arity);
    if (!ids.insert(line.words[1]).second) fail(line, "duplicate id " + line.words[1]);
    if (kind == "v") {
      vertex_index.emplace(line.words[1], k.values.size());
      k.vertex_ids.push_back(line.words[1]);
      k.values.push_back(value_at(line, line.words[2]));
      continue;
    }
    ScalarField2::Simplex s{line.words[1], {}};
    for (std::size_t j = 0; j < arity; ++j) {
      auto it = vertex_index.find(line.words[2 + j]);
      if (it == vertex_index.end()) fail(line, "unknown vertex " + line.words[2 + j]);
      s.vertices.push_back(it->second);
    }
    (kind == "e" ? k.edges : k.triangles).push_back(std::move(s));
  }
  try {
    check_field(k);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return k;
}

std::string emit_field(const ScalarField2& k) {
  std::ostringstream out;
  for (std::size_t v = 0; v < k.values.size(); ++v) out << "v " << k.vertex_ids[v] << ' ' << str(k.values[v]) << '\n';
  for (const auto& e : k.edges) {
    out << "e " << e.id << ' ' << k.vertex_ids[e.vertices[0]] << ' ' << k.vertex_ids[e.vertices[1]] << '\n';
  }
  for (const auto& t : k.triangles) {
    out << "t " << t.id;
    for (std::size_t v : t.vertices) out << ' ' << k.vertex_ids[v];
    out << '\n';
  }
  return out.str();
}

namespace {

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey edge_key(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

std::map<EdgeKey, std::size_t> edge_index(const ScalarField2& k) {
  std::map<EdgeKey, std::size_t> out;
  for (std::size_t e = 0; e < k.edges.size(); ++e) out.emplace(edge_key(k.edges[e].vertices[0], k.edges[e].vertices[1]), e);
  return out;
}

/// Edge indices of the three sides of each triangle.
std::vector<std::array<std::size_t, 3>> triangle_sides(const ScalarField2& k) {
  const auto index = edge_index(k);
  std::vector<std::array<std::size_t, 3>> out;
  for (const auto& t : k.triangles) {
    const auto& v = t.vertices;
    std::array<std::size_t, 3> sides{};
    const EdgeKey keys[3] = {edge_key(v[0], v[1]), edge_key(v[1], v[2]), edge_key(v[0], v[2])};
    for (int j = 0; j < 3; ++j) {
      auto it = index.find(keys[j]);
      if (it == index.end()) {
        throw std::invalid_argument("triangle " + t.id + " is missing its edge " + k.vertex_ids[keys[j].first] + "-" +
                                    k.vertex_ids[keys[j].second]);
      }
      sides[j] = it->second;
    }
    out.push_back(sides);
  }
  return out;
}

}  // namespace

void check_field(const ScalarField2& k) {
  if (k.values.size() != k.vertex_ids.size()) throw std::invalid_argument("one value per vertex");
  detail::IdPool ids;
  for (const auto& id : k.vertex_ids) {
    if (!ids.take(id)) throw std::invalid_argument("duplicate id " + id);
  }
  std::set<EdgeKey> seen;
  for (const auto& e : k.edges) {
    if (!ids.take(e.id)) throw std::invalid_argument("duplicate id " + e.id);
    if (e.vertices.size() != 2 || e.vertices[0] >= k.values.size() || e.vertices[1] >= k.values.size()) {
      throw std::invalid_argument("edge " + e.id + " needs two known vertices");
    }
    if (k.values[e.vertices[0]] == k.values[e.vertices[1]]) {
      throw std::invalid_argument("edge " + e.id + " joins vertices of equal value");
    }
    if (!seen.insert(edge_key(e.vertices[0], e.vertices[1])).second) {
      throw std::invalid_argument("edge " + e.id + " repeats another edge");
    }
  }
  for (const auto& t : k.triangles) {
    if (!ids.take(t.id)) throw std::invalid_argument("duplicate id " + t.id);
    const auto& v = t.vertices;
    if (v.size() != 3 || v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) {
      throw std::invalid_argument("triangle " + t.id + " needs three distinct vertices");
    }
  }
  triangle_sides(k);
}

std::size_t num_components(const ScalarField2& k) {
  detail::DisjointSets ds(k.values.size());
  std::size_t n = k.values.size();
  for (const auto& e : k.edges) {
    if (ds.unite(e.vertices[0], e.vertices[1])) --n;
  }
  return n;
}

ScalarField2 field_of_graph(const RGraph& g) {
  ScalarField2 k;
  detail::IdPool pool;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    pool.take(g.vertex(v).id);
    k.vertex_ids.push_back(g.vertex(v).id);
    k.values.push_back(g.value(v));
  }
  for (const Edge& e : g.edges()) pool.take(e.id);
  // Each edge is split at its middle value so parallel edges stay simplicial.
  for (const Edge& e : g.edges()) {
    const std::size_t mid = k.values.size();
    k.vertex_ids.push_back(pool.fresh(e.id + "@mid"));
    k.values.push_back(midpoint(g.value(e.lower), g.value(e.upper)));
    k.edges.push_back({e.id, {e.lower, mid}});
    k.edges.push_back({pool.fresh(e.id + ":up"), {mid, e.upper}});
  }
  return k;
}

// ---------------------------------------------------------------------------
// Reeb graph of a field

Cell ReebQuotient::locate(std::size_t simplex, const Rational& x) const {
  const std::size_t p = position_of(graph.criticals(), x);
  for (const auto& [q, c] : images.at(simplex)) {
    if (q == p) return c;
  }
  throw std::invalid_argument("simplex has no point of value " + x.str());
}

ReebQuotient reeb_of_complex(const ScalarField2& k) {
  check_field(k);
  const std::size_t nv = k.values.size();
  const std::size_t ne = k.edges.size();
  const std::size_t n = k.num_simplices();
  const auto sides = triangle_sides(k);
  std::vector<Rational> lo(n);
  std::vector<Rational> hi(n);
  std::vector<std::vector<std::size_t>> faces(n);
  for (std::size_t v = 0; v < nv; ++v) lo[v] = hi[v] = k.values[v];
  for (std::size_t e = 0; e < ne; ++e) {
    const auto& s = k.edges[e].vertices;
    faces[nv + e] = {s[0], s[1]};
  }
  for (std::size_t t = 0; t < k.triangles.size(); ++t) {
    auto& f = faces[nv + ne + t];
    f.assign(k.triangles[t].vertices.begin(), k.triangles[t].vertices.end());
    for (std::size_t e : sides[t]) f.push_back(nv + e);
  }
  for (std::size_t s = nv; s < n; ++s) {
    lo[s] = hi[s] = lo[faces[s][0]];
    for (std::size_t f : faces[s]) {
      if (f >= nv) continue;
      lo[s] = std::min(lo[s], k.values[f]);
      hi[s] = std::max(hi[s], k.values[f]);
    }
  }

  const std::vector<Rational> levels = merge_values({}, k.values);
  ReebQuotient out;
  out.images.resize(n);
  // components of the simplices selected by `inside`, joined through faces
  auto components = [&](const std::vector<bool>& inside, std::vector<std::size_t>& label) {
    detail::DisjointSets ds(n);
    for (std::size_t s = 0; s < n; ++s) {
      if (!inside[s]) continue;
      for (std::size_t f : faces[s]) {
        if (inside[f]) ds.unite(s, f);
      }
    }
    label.assign(n, kNoIndex);
    std::vector<std::size_t> root_label(n, kNoIndex);
    std::size_t count = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (!inside[s]) continue;
      std::size_t& l = root_label[ds.find(s)];
      if (l == kNoIndex) l = count++;
      label[s] = l;
    }
    return count;
  };

  std::vector<Vertex> vertices;
  std::vector<std::vector<std::size_t>> level_vertex(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::vector<bool> inside(n);
    for (std::size_t s = 0; s < n; ++s) inside[s] = s < nv ? lo[s] == levels[i] : (lo[s] < levels[i] && levels[i] < hi[s]);
    const std::size_t count = components(inside, level_vertex[i]);
    const std::size_t first = vertices.size();
    for (std::size_t c = 0; c < count; ++c) vertices.push_back({"v" + std::to_string(i) + "." + std::to_string(c), i});
    for (std::size_t s = 0; s < n; ++s) {
      if (!inside[s]) continue;
      level_vertex[i][s] += first;
      out.images[s].emplace_back(2 * i, Cell::vertex(level_vertex[i][s]));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    std::vector<bool> inside(n);
    for (std::size_t s = nv; s < n; ++s) inside[s] = lo[s] <= levels[i] && levels[i + 1] <= hi[s];
    std::vector<std::size_t> label;
    const std::size_t count = components(inside, label);
    const std::size_t first = edges.size();
    for (std::size_t c = 0; c < count; ++c) {
      edges.push_back({"e" + std::to_string(i) + "." + std::to_string(c), i, kNoIndex, kNoIndex});
    }
    for (std::size_t s = nv; s < n; ++s) {
      if (!inside[s]) continue;
      Edge& e = edges[first + label[s]];
      out.images[s].emplace_back(2 * i + 1, Cell::edge(first + label[s]));
      if (s >= nv + ne || e.lower != kNoIndex) continue;
      // an edge of K reaches both bounding levels through itself or an endpoint
      const auto& ends = faces[s];
      auto attach = [&](std::size_t level, const Rational& a) {
        if (lo[s] < a && a < hi[s]) return level_vertex[level][s];
        return level_vertex[level][k.values[ends[0]] == a ? ends[0] : ends[1]];
      };
      e.lower = attach(i, levels[i]);
      e.upper = attach(i + 1, levels[i + 1]);
    }
  }
  for (auto& img : out.images) std::sort(img.begin(), img.end());
  out.graph = RGraph(levels, std::move(vertices), std::move(edges));
  auto report = validate(out.graph);
  if (!report.ok()) throw InternalError("Reeb graph of a complex failed to validate:\n" + report.describe());
  return out;
}

// ---------------------------------------------------------------------------

std::string export_dot(const RGraph& g, const DotOptions& options) {
  std::ostringstream out;
  out << "graph reeb {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (const Vertex& v : g.vertices()) {
    out << "  \"" << v.id << "\" [label=\"" << v.id << "\\n" << str(g.level_value(v.level)) << "\"];\n";
  }
  if (options.rank_by_value) {
    for (std::size_t i = 0; i < g.num_levels(); ++i) {
      if (g.level(i).empty()) continue;
      out << "  { rank=same;";
      for (std::size_t v : g.level(i)) out << " \"" << g.vertex(v).id << "\";";
      out << " }\n";
    }
  }
  for (const Edge& e : g.edges()) {
    out << "  \"" << g.vertex(e.lower).id << "\" -- \"" << g.vertex(e.upper).id << "\" [label=\"" << e.id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string describe(const Evaluation& e, const Cosheaf& f) {
  std::ostringstream out;
  out << "F" << e.interval.str() << ": " << e.components.size() << " component"
      << (e.components.size() == 1 ? "" : "s") << '\n';
  for (std::size_t c = 0; c < e.components.size(); ++c) {
    out << "  " << c << ':';
    for (const Part& p : e.components[c]) {
      const auto& set = p.is_node ? f.node_sets[p.index] : f.edge_sets[p.index];
      out << ' ' << set[p.element].name;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace reebcat
