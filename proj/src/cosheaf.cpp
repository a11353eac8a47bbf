#include "reebcat/cosheaf.hpp"

#include <algorithm>
#include <map>

#include "reebcat/detail/util.hpp"

namespace reebcat {

// ---------------------------------------------------------------------------
// Intervals

Interval Interval::open(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) return none();
  return Interval{lo, hi, false};
}
Interval Interval::below(const Rational& hi) { return Interval{std::nullopt, hi, false}; }
Interval Interval::above(const Rational& lo) { return Interval{lo, std::nullopt, false}; }
Interval Interval::line() { return Interval{}; }
Interval Interval::none() { return Interval{std::nullopt, std::nullopt, true}; }

bool Interval::contains(const Rational& x) const {
  return !empty && (!lo || *lo < x) && (!hi || x < *hi);
}

bool Interval::contains(const Interval& other) const {
  if (other.empty) return true;
  if (empty) return false;
  const bool lo_ok = !lo || (other.lo && *lo <= *other.lo);
  const bool hi_ok = !hi || (other.hi && *other.hi <= *hi);
  return lo_ok && hi_ok;
}

std::string Interval::str() const {
  if (empty) return "()";
  return "(" + (lo ? lo->str() : std::string("-inf")) + "," + (hi ? hi->str() : std::string("inf")) + ")";
}

Interval expand(const Interval& i, const Rational& eps) {
  if (eps < Rational(0)) throw std::invalid_argument("negative expansion " + eps.str());
  if (i.empty) return i;
  Interval out = i;
  if (out.lo) out.lo = *out.lo - eps;
  if (out.hi) out.hi = *out.hi + eps;
  return out;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.empty || b.empty) return Interval::none();
  Interval out;
  out.lo = !a.lo ? b.lo : !b.lo ? a.lo : std::max(*a.lo, *b.lo);
  out.hi = !a.hi ? b.hi : !b.hi ? a.hi : std::min(*a.hi, *b.hi);
  if (out.lo && out.hi && !(*out.lo < *out.hi)) return Interval::none();
  return out;
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  Interval out;
  if (a.lo && b.lo) out.lo = std::min(*a.lo, *b.lo);
  if (a.hi && b.hi) out.hi = std::max(*a.hi, *b.hi);
  return out;
}

namespace {

Interval short_node(const std::vector<Rational>& s, std::size_t i) {
  Interval out;
  if (i > 0) out.lo = s[i - 1];
  if (i + 1 < s.size()) out.hi = s[i + 1];
  return out;
}

Interval short_edge(const std::vector<Rational>& s, std::size_t i) { return Interval::open(s[i], s[i + 1]); }

std::size_t num_slots(const std::vector<Rational>& s) { return s.empty() ? 0 : s.size() - 1; }

const Element& element(const Cosheaf& f, const Part& p) {
  return p.is_node ? f.node_sets[p.index][p.element] : f.edge_sets[p.index][p.element];
}

}  // namespace

Interval Cosheaf::node_interval(std::size_t i) const { return short_node(criticals, i); }
Interval Cosheaf::edge_interval(std::size_t i) const { return short_edge(criticals, i); }

// ---------------------------------------------------------------------------
// Construction and validation

ValidationReport validate(const Cosheaf& f) {
  ValidationReport report;
  auto add = [&](std::string id, std::string rule) { report.violations.push_back({std::move(id), std::move(rule)}); };
  const std::size_t n = f.criticals.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(f.criticals[i] < f.criticals[i + 1])) add(f.criticals[i + 1].str(), "critical values not strictly increasing");
  }
  if (f.node_sets.size() != n) add("<cosheaf>", "node sets do not match critical values");
  const std::size_t slots = num_slots(f.criticals);
  if (f.edge_sets.size() != slots || f.left_maps.size() != slots || f.right_maps.size() != slots) {
    add("<cosheaf>", "edge sets or maps do not match slots");
  }
  if (!report.ok()) return report;
  auto unique_names = [&](const std::vector<Element>& set, const std::string& where) {
    std::vector<std::string> names;
    for (const auto& e : set) names.push_back(e.name);
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end()) add(where, "duplicate element name");
  };
  for (std::size_t i = 0; i < n; ++i) unique_names(f.node_sets[i], "level " + std::to_string(i));
  for (std::size_t i = 0; i < slots; ++i) {
    const std::string where = "slot " + std::to_string(i);
    unique_names(f.edge_sets[i], where);
    const std::size_t m = f.edge_sets[i].size();
    if (f.left_maps[i].size() != m || f.right_maps[i].size() != m) {
      add(where, "partial attaching map");
      continue;
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (f.left_maps[i][k] >= f.node_sets[i].size() || f.right_maps[i][k] >= f.node_sets[i + 1].size()) {
        add(where, "attaching map out of range");
      }
    }
  }
  return report;
}

Cosheaf reeb_cosheaf(const RGraph& g) {
  Cosheaf f;
  f.criticals = g.criticals();
  const std::size_t n = g.num_levels();
  std::vector<std::size_t> position(g.num_vertices());
  f.node_sets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v : g.level(i)) {
      position[v] = f.node_sets[i].size();
      Element e{g.vertex(v).id, {g.vertex(v).id}};
      for (std::size_t x : g.up_edges(v)) e.members.push_back(g.edge(x).id);
      for (std::size_t x : g.down_edges(v)) e.members.push_back(g.edge(x).id);
      std::sort(e.members.begin(), e.members.end());
      f.node_sets[i].push_back(std::move(e));
    }
  }
  const std::size_t slots = g.num_slots();
  f.edge_sets.resize(slots);
  f.left_maps.resize(slots);
  f.right_maps.resize(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    for (std::size_t x : g.slot(i)) {
      f.edge_sets[i].push_back(Element{g.edge(x).id, {g.edge(x).id}});
      f.left_maps[i].push_back(position[g.edge(x).lower]);
      f.right_maps[i].push_back(position[g.edge(x).upper]);
    }
  }
  return f;
}

RGraph display(const Cosheaf& f) {
  detail::IdPool ids;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<std::size_t> offset;
  for (std::size_t i = 0; i < f.node_sets.size(); ++i) {
    offset.push_back(vertices.size());
    for (const auto& e : f.node_sets[i]) vertices.push_back(Vertex{ids.fresh(e.name), i});
  }
  for (std::size_t i = 0; i < f.edge_sets.size(); ++i) {
    for (std::size_t k = 0; k < f.edge_sets[i].size(); ++k) {
      edges.push_back(Edge{ids.fresh(f.edge_sets[i][k].name), i, offset[i] + f.left_maps[i][k],
                           offset[i + 1] + f.right_maps[i][k]});
    }
  }
  return RGraph(f.criticals, std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

/// Half-open index range [p, end) of the critical values inside i.
std::pair<std::size_t, std::size_t> critical_range(const std::vector<Rational>& s, const Interval& i) {
  const std::size_t p =
      i.lo ? static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), *i.lo) - s.begin()) : 0;
  const std::size_t end =
      i.hi ? static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), *i.hi) - s.begin()) : s.size();
  return {p, end};
}

}  // namespace

std::optional<std::size_t> Evaluation::component_of(const Part& p) const {
  auto it = std::lower_bound(index.begin(), index.end(), p,
                             [](const std::pair<Part, std::size_t>& a, const Part& b) { return a.first < b; });
  if (it == index.end() || it->first != p) return std::nullopt;
  return it->second;
}

Interval clamp(const Cosheaf& f, const Interval& i) {
  const auto& s = f.criticals;
  if (i.empty || s.empty()) return i.empty ? i : Interval::line();
  auto [p, end] = critical_range(s, i);
  if (p >= end) {
    if (p == 0) return Interval::below(s.front());
    if (p == s.size()) return Interval::above(s.back());
    return short_edge(s, p - 1);
  }
  Interval out;
  if (p > 0) out.lo = s[p - 1];
  if (end < s.size()) out.hi = s[end];
  return out;
}

Evaluation evaluate(const Cosheaf& f, const Interval& i) {
  Evaluation ev;
  ev.interval = i;
  const auto& s = f.criticals;
  if (i.empty || s.empty()) return ev;
  auto [p, end] = critical_range(s, i);
  if (p >= end) {
    if (p == 0 || p == s.size()) return ev;
    const std::size_t j = p - 1;
    for (std::size_t k = 0; k < f.edge_sets[j].size(); ++k) {
      ev.components.push_back({Part{false, j, k}});
      ev.index.push_back({Part{false, j, k}, k});
    }
    return ev;
  }
  const std::size_t q = end - 1;
  std::vector<Part> parts;
  for (std::size_t a = p; a <= q; ++a) {
    for (std::size_t k = 0; k < f.node_sets[a].size(); ++k) parts.push_back(Part{true, a, k});
  }
  for (std::size_t j = p > 0 ? p - 1 : 0; j <= q && j < num_slots(s); ++j) {
    for (std::size_t k = 0; k < f.edge_sets[j].size(); ++k) parts.push_back(Part{false, j, k});
  }
  std::sort(parts.begin(), parts.end());
  auto slot_of = [&](const Part& x) {
    return static_cast<std::size_t>(std::lower_bound(parts.begin(), parts.end(), x) - parts.begin());
  };
  detail::DisjointSets ds(parts.size());
  for (std::size_t n = 0; n < parts.size(); ++n) {
    const Part& x = parts[n];
    if (x.is_node) continue;
    const std::size_t j = x.index;
    if (j >= p) ds.unite(n, slot_of(Part{true, j, f.left_maps[j][x.element]}));
    if (j + 1 <= q) ds.unite(n, slot_of(Part{true, j + 1, f.right_maps[j][x.element]}));
  }
  std::vector<std::size_t> label(parts.size(), kNoIndex);
  for (std::size_t n = 0; n < parts.size(); ++n) {
    const std::size_t r = ds.find(n);
    if (label[r] == kNoIndex) {
      label[r] = ev.components.size();
      ev.components.emplace_back();
    }
    ev.components[label[r]].push_back(parts[n]);
    ev.index.push_back({parts[n], label[r]});
  }
  return ev;
}

std::vector<std::size_t> extend_map(const Cosheaf& f, const Evaluation& i, const Evaluation& j) {
  (void)f;
  std::vector<std::size_t> out;
  out.reserve(i.components.size());
  for (const auto& comp : i.components) {
    auto c = j.component_of(comp.front());
    if (!c) throw InternalError("component of " + i.interval.str() + " missing from " + j.interval.str());
    out.push_back(*c);
  }
  return out;
}

std::vector<std::size_t> extend_map(const Cosheaf& f, const Interval& i, const Interval& j) {
  if (!j.contains(i)) throw std::invalid_argument(i.str() + " is not contained in " + j.str());
  return extend_map(f, evaluate(f, i), evaluate(f, j));
}

// ---------------------------------------------------------------------------
// Smoothing

std::vector<Rational> smoothed_criticals(const std::vector<Rational>& s, const Rational& eps) {
  std::vector<Rational> out;
  out.reserve(2 * s.size());
  for (const auto& a : s) {
    out.push_back(a - eps);
    out.push_back(a + eps);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Element merged_element(const Cosheaf& f, const std::vector<Part>& parts) {
  Element e;
  std::vector<std::string> names;
  for (const Part& p : parts) {
    const Element& x = element(f, p);
    names.push_back(x.name);
    e.members.insert(e.members.end(), x.members.begin(), x.members.end());
  }
  std::sort(names.begin(), names.end());
  std::sort(e.members.begin(), e.members.end());
  e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
  e.name = "{";
  for (std::size_t k = 0; k < names.size(); ++k) e.name += (k ? "," : "") + names[k];
  e.name += "}";
  return e;
}

struct Resampled {
  Cosheaf out;
  std::vector<Evaluation> nodes;
  std::vector<Evaluation> edges;
};

Resampled resample_with_evaluations(const Cosheaf& f, const std::vector<Rational>& values, const Rational& eps) {
  Resampled r;
  r.out.criticals = values;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes.push_back(evaluate(f, expand(short_node(values, i), eps)));
    auto& set = r.out.node_sets.emplace_back();
    for (const auto& comp : r.nodes.back().components) set.push_back(merged_element(f, comp));
  }
  for (std::size_t i = 0; i < num_slots(values); ++i) {
    r.edges.push_back(evaluate(f, expand(short_edge(values, i), eps)));
    auto& set = r.out.edge_sets.emplace_back();
    for (const auto& comp : r.edges.back().components) set.push_back(merged_element(f, comp));
    r.out.left_maps.push_back(extend_map(f, r.edges[i], r.nodes[i]));
    r.out.right_maps.push_back(extend_map(f, r.edges[i], r.nodes[i + 1]));
  }
  return r;
}

}  // namespace

Cosheaf resample(const Cosheaf& f, const std::vector<Rational>& values, const Rational& eps) {
  return resample_with_evaluations(f, values, eps).out;
}

Cosheaf smooth_cosheaf(const Cosheaf& f, const Rational& eps) {
  return resample(f, smoothed_criticals(f.criticals, eps), eps);
}

Cosheaf refine_cosheaf(const Cosheaf& f, const std::vector<Rational>& extra) {
  return resample(f, merge_values(f.criticals, extra), Rational(0));
}

// ---------------------------------------------------------------------------
// Morphisms

ValidationReport validate_cosheaf_morphism(const CosheafMorphism& m) {
  ValidationReport report;
  auto add = [&](std::string id, std::string rule) { report.violations.push_back({std::move(id), std::move(rule)}); };
  if (!m.source || !m.target) {
    add("<morphism>", "missing source or target");
    return report;
  }
  const Cosheaf& f = *m.source;
  const Cosheaf& g = *m.target;
  if (f.criticals != g.criticals) {
    add("<morphism>", "source and target critical values differ");
    return report;
  }
  if (m.node_maps.size() != f.node_sets.size() || m.edge_maps.size() != f.edge_sets.size()) {
    add("<morphism>", "map count differs from the zigzag");
    return report;
  }
  for (std::size_t i = 0; i < f.node_sets.size(); ++i) {
    if (m.node_maps[i].size() != f.node_sets[i].size() ||
        std::any_of(m.node_maps[i].begin(), m.node_maps[i].end(),
                    [&](std::size_t x) { return x >= g.node_sets[i].size(); })) {
      add("level " + std::to_string(i), "node map is not a total map into the target");
    }
  }
  for (std::size_t i = 0; i < f.edge_sets.size(); ++i) {
    if (m.edge_maps[i].size() != f.edge_sets[i].size() ||
        std::any_of(m.edge_maps[i].begin(), m.edge_maps[i].end(),
                    [&](std::size_t x) { return x >= g.edge_sets[i].size(); })) {
      add("slot " + std::to_string(i), "edge map is not a total map into the target");
    }
  }
  if (!report.ok()) return report;
  for (std::size_t i = 0; i < f.edge_sets.size(); ++i) {
    for (std::size_t k = 0; k < f.edge_sets[i].size(); ++k) {
      const std::size_t image = m.edge_maps[i][k];
      if (m.node_maps[i][f.left_maps[i][k]] != g.left_maps[i][image]) {
        add("slot " + std::to_string(i), "left square fails at " + f.edge_sets[i][k].name);
      }
      if (m.node_maps[i + 1][f.right_maps[i][k]] != g.right_maps[i][image]) {
        add("slot " + std::to_string(i), "right square fails at " + f.edge_sets[i][k].name);
      }
    }
  }
  return report;
}

CosheafMorphism identity_cosheaf_morphism(CosheafRef f) {
  CosheafMorphism m{f, f, {}, {}};
  for (const auto& set : f->node_sets) {
    auto& map = m.node_maps.emplace_back(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) map[k] = k;
  }
  for (const auto& set : f->edge_sets) {
    auto& map = m.edge_maps.emplace_back(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) map[k] = k;
  }
  return m;
}

CosheafMorphism sigma_map(const Cosheaf& f, const Rational& eps) {
  const auto values = merge_values(f.criticals, smoothed_criticals(f.criticals, eps));
  Resampled source = resample_with_evaluations(f, values, Rational(0));
  Resampled target = resample_with_evaluations(f, values, eps);
  CosheafMorphism m;
  for (std::size_t i = 0; i < values.size(); ++i) m.node_maps.push_back(extend_map(f, source.nodes[i], target.nodes[i]));
  for (std::size_t i = 0; i < num_slots(values); ++i) {
    m.edge_maps.push_back(extend_map(f, source.edges[i], target.edges[i]));
  }
  m.source = share(std::move(source.out));
  m.target = share(std::move(target.out));
  return m;
}

namespace {

Part image_part(const CosheafMorphism& m, const Part& p) {
  return Part{p.is_node, p.index, p.is_node ? m.node_maps[p.index][p.element] : m.edge_maps[p.index][p.element]};
}

std::vector<std::size_t> map_components(const CosheafMorphism& m, const Evaluation& from, const Evaluation& to) {
  std::vector<std::size_t> out;
  for (const auto& comp : from.components) {
    auto c = to.component_of(image_part(m, comp.front()));
    if (!c) throw InternalError("morphism image missing from " + to.interval.str());
    out.push_back(*c);
  }
  return out;
}

/// Index maps a -> b between cosheaves presented alike, matching elements
/// by their members.
std::optional<CosheafMorphism> match(const CosheafRef& a, const CosheafRef& b) {
  if (a->criticals != b->criticals || a->node_sets.size() != b->node_sets.size() ||
      a->edge_sets.size() != b->edge_sets.size()) {
    return std::nullopt;
  }
  auto key = [](const Element& e) { return e.members.empty() ? std::vector<std::string>{e.name} : e.members; };
  auto match_sets = [&](const std::vector<Element>& x, const std::vector<Element>& y)
      -> std::optional<std::vector<std::size_t>> {
    if (x.size() != y.size()) return std::nullopt;
    std::map<std::vector<std::string>, std::size_t> where;
    for (std::size_t k = 0; k < y.size(); ++k) where[key(y[k])] = k;
    std::vector<std::size_t> out;
    for (const auto& e : x) {
      auto it = where.find(key(e));
      if (it == where.end()) return std::nullopt;
      out.push_back(it->second);
    }
    return out;
  };
  CosheafMorphism m{a, b, {}, {}};
  for (std::size_t i = 0; i < a->node_sets.size(); ++i) {
    auto s = match_sets(a->node_sets[i], b->node_sets[i]);
    if (!s) return std::nullopt;
    m.node_maps.push_back(std::move(*s));
  }
  for (std::size_t i = 0; i < a->edge_sets.size(); ++i) {
    auto s = match_sets(a->edge_sets[i], b->edge_sets[i]);
    if (!s) return std::nullopt;
    m.edge_maps.push_back(std::move(*s));
  }
  return m;
}

CosheafMorphism compose_aligned(const CosheafMorphism& first, const CosheafMorphism& second) {
  CosheafMorphism out{first.source, second.target, first.node_maps, first.edge_maps};
  for (std::size_t i = 0; i < out.node_maps.size(); ++i) {
    for (auto& x : out.node_maps[i]) x = second.node_maps[i][x];
  }
  for (std::size_t i = 0; i < out.edge_maps.size(); ++i) {
    for (auto& x : out.edge_maps[i]) x = second.edge_maps[i][x];
  }
  return out;
}

}  // namespace

std::vector<std::size_t> interval_map(const CosheafMorphism& m, const Interval& i) {
  return map_components(m, evaluate(*m.source, i), evaluate(*m.target, i));
}

CosheafMorphism refine_cosheaf_morphism(const CosheafMorphism& m, const std::vector<Rational>& values) {
  const auto t = merge_values(m.source->criticals, values);
  Resampled source = resample_with_evaluations(*m.source, t, Rational(0));
  Resampled target = resample_with_evaluations(*m.target, t, Rational(0));
  CosheafMorphism out;
  for (std::size_t i = 0; i < t.size(); ++i) out.node_maps.push_back(map_components(m, source.nodes[i], target.nodes[i]));
  for (std::size_t i = 0; i < num_slots(t); ++i) {
    out.edge_maps.push_back(map_components(m, source.edges[i], target.edges[i]));
  }
  out.source = share(std::move(source.out));
  out.target = share(std::move(target.out));
  return out;
}

CosheafMorphism compose(const CosheafMorphism& first, const CosheafMorphism& second) {
  auto bridge = match(first.target, second.source);
  if (!bridge) throw std::invalid_argument("cannot compose: middle cosheaves do not match");
  return compose_aligned(compose_aligned(first, *bridge), second);
}

bool equal(const CosheafMorphism& a, const CosheafMorphism& b) {
  auto s = match(a.source, b.source);
  auto t = match(a.target, b.target);
  if (!s || !t) return false;
  const CosheafMorphism lhs = compose_aligned(a, *t);
  const CosheafMorphism rhs = compose_aligned(*s, b);
  return lhs.node_maps == rhs.node_maps && lhs.edge_maps == rhs.edge_maps;
}

CosheafMorphism reeb_cosheaf_map(const RGraphMorphism& m) {
  const RefinedMorphism r = refine_morphism(m);
  const RGraph& s = r.source.fine;
  const RGraph& t = r.target.fine;
  auto positions = [](const RGraph& g) {
    std::vector<std::size_t> vpos(g.num_vertices());
    std::vector<std::size_t> epos(g.num_edges());
    for (std::size_t i = 0; i < g.num_levels(); ++i) {
      for (std::size_t k = 0; k < g.level(i).size(); ++k) vpos[g.level(i)[k]] = k;
    }
    for (std::size_t i = 0; i < g.num_slots(); ++i) {
      for (std::size_t k = 0; k < g.slot(i).size(); ++k) epos[g.slot(i)[k]] = k;
    }
    return std::make_pair(vpos, epos);
  };
  const auto [tv, te] = positions(t);
  CosheafMorphism out{share(reeb_cosheaf(s)), share(reeb_cosheaf(t)), {}, {}};
  for (std::size_t i = 0; i < s.num_levels(); ++i) {
    auto& map = out.node_maps.emplace_back();
    for (std::size_t v : s.level(i)) map.push_back(tv[r.vertex_map[v]]);
  }
  for (std::size_t i = 0; i < s.num_slots(); ++i) {
    auto& map = out.edge_maps.emplace_back();
    for (std::size_t e : s.slot(i)) map.push_back(te[r.edge_map[e]]);
  }
  return out;
}

std::optional<CosheafMorphism> is_cosheaf_iso(const Cosheaf& f, const Cosheaf& g, std::size_t budget) {
  const auto values = merge_values(f.criticals, g.criticals);
  CosheafRef rf = share(resample(f, values, Rational(0)));
  CosheafRef rg = share(resample(g, values, Rational(0)));
  const RGraph df = display(*rf);
  const RGraph dg = display(*rg);
  auto iso = find_presentation_iso(df, dg, budget);
  if (!iso) return std::nullopt;
  CosheafMorphism m{rf, rg, {}, {}};
  std::size_t offset = 0;
  for (const auto& set : rf->node_sets) {
    auto& map = m.node_maps.emplace_back();
    for (std::size_t k = 0; k < set.size(); ++k) map.push_back(iso->vertex_map[offset + k] - offset);
    offset += set.size();
  }
  offset = 0;
  for (const auto& set : rf->edge_sets) {
    auto& map = m.edge_maps.emplace_back();
    for (std::size_t k = 0; k < set.size(); ++k) map.push_back(iso->edge_map[offset + k] - offset);
    offset += set.size();
  }
  return m;
}

GluingCheck check_gluing(const Cosheaf& f, const Interval& i, const Interval& j) {
  const Interval k = intersect(i, j);
  if (k.empty) throw std::invalid_argument("gluing needs overlapping intervals");
  const Interval u = hull(i, j);
  const Evaluation ei = evaluate(f, i);
  const Evaluation ej = evaluate(f, j);
  const Evaluation ek = evaluate(f, k);
  const Evaluation eu = evaluate(f, u);
  const auto ki = extend_map(f, ek, ei);
  const auto kj = extend_map(f, ek, ej);
  const std::size_t ni = ei.components.size();
  detail::DisjointSets ds(ni + ej.components.size());
  for (std::size_t c = 0; c < ek.components.size(); ++c) ds.unite(ki[c], ni + kj[c]);

  const auto iu = extend_map(f, ei, eu);
  const auto ju = extend_map(f, ej, eu);
  std::map<std::size_t, std::size_t> class_image;
  bool holds = true;
  auto record = [&](std::size_t node, std::size_t image) {
    auto [it, fresh] = class_image.emplace(ds.find(node), image);
    if (!fresh && it->second != image) holds = false;
  };
  for (std::size_t c = 0; c < ni; ++c) record(c, iu[c]);
  for (std::size_t c = 0; c < ej.components.size(); ++c) record(ni + c, ju[c]);
  std::vector<bool> hit(eu.components.size(), false);
  for (const auto& [cls, image] : class_image) {
    if (hit[image]) holds = false;
    hit[image] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) holds = false;
  return GluingCheck{holds, class_image.size(), eu.components.size()};
}

}  // namespace reebcat
