#include "reebcat/smoothing.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "reebcat/cosheaf.hpp"
#include "reebcat/detail/util.hpp"

namespace reebcat {

namespace {

constexpr NodeId kAbsent = static_cast<NodeId>(-1);

/// Smoothed graph before canonical numbering: window components with their
/// input cells, the arcs between them, and optionally zeta.
struct Skeleton {
  struct Arc {
    std::size_t slot;
    std::size_t lower;
    std::size_t upper;
  };
  std::vector<Rational> levels;
  std::vector<std::size_t> vertex_level;
  std::vector<std::vector<Cell>> vertex_members;
  std::vector<Arc> arcs;
  std::vector<std::vector<Cell>> arc_members;
  bool has_members = false;
  bool has_zeta = false;
  std::vector<Cell> zeta_vertices;
  std::vector<std::vector<std::size_t>> zeta_edges;
};

std::vector<std::pair<std::size_t, std::size_t>> lookup_table(const RGraph& g,
                                                              const std::vector<std::size_t>& owners,
                                                              const std::vector<std::vector<Cell>>& members) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t y : owners) {
    for (Cell c : members[y]) out.emplace_back(g.cell_number(c), y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SmoothingResult assemble(GraphRef g, const Rational& eps, Skeleton s) {
  const RGraph& in = *g;
  auto key = [&](const std::vector<Cell>& members, std::size_t fallback) {
    if (!s.has_members) return fallback;
    std::size_t k = kNoIndex;
    for (Cell c : members) k = std::min(k, in.cell_number(c));
    return k;
  };
  const std::size_t nv = s.vertex_level.size();
  const std::size_t na = s.arcs.size();
  std::vector<std::size_t> vorder(nv);
  std::iota(vorder.begin(), vorder.end(), std::size_t{0});
  std::vector<std::size_t> vkey(nv);
  for (std::size_t x = 0; x < nv; ++x) vkey[x] = key(s.has_members ? s.vertex_members[x] : std::vector<Cell>{}, x);
  std::sort(vorder.begin(), vorder.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(s.vertex_level[a], vkey[a]) < std::tie(s.vertex_level[b], vkey[b]);
  });
  std::vector<std::size_t> aorder(na);
  std::iota(aorder.begin(), aorder.end(), std::size_t{0});
  std::vector<std::size_t> akey(na);
  for (std::size_t x = 0; x < na; ++x) akey[x] = key(s.has_members ? s.arc_members[x] : std::vector<Cell>{}, x);
  std::sort(aorder.begin(), aorder.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(s.arcs[a].slot, akey[a]) < std::tie(s.arcs[b].slot, akey[b]);
  });
  std::vector<std::size_t> vnew(nv);
  std::vector<std::size_t> anew(na);
  for (std::size_t k = 0; k < nv; ++k) vnew[vorder[k]] = k;
  for (std::size_t k = 0; k < na; ++k) anew[aorder[k]] = k;

  std::vector<Vertex> vertices;
  std::vector<std::size_t> rank(s.levels.size(), 0);
  for (std::size_t x : vorder) {
    const std::size_t level = s.vertex_level[x];
    vertices.push_back(Vertex{"v" + std::to_string(level) + "." + std::to_string(rank[level]++), level});
  }
  std::vector<Edge> edges;
  std::fill(rank.begin(), rank.end(), 0);
  for (std::size_t x : aorder) {
    const auto& a = s.arcs[x];
    if (a.upper == kNoIndex) throw InternalError("smoothed edge left open");
    edges.push_back(
        Edge{"e" + std::to_string(a.slot) + "." + std::to_string(rank[a.slot]++), a.slot, vnew[a.lower], vnew[a.upper]});
  }

  SmoothingResult r;
  r.input = g;
  r.eps = eps;
  r.smoothed = share(RGraph(s.levels, std::move(vertices), std::move(edges)));
  const RGraph& out = *r.smoothed;
  r.has_provenance = s.has_members;
  if (s.has_members) {
    auto by_number = [&](Cell a, Cell b) { return in.cell_number(a) < in.cell_number(b); };
    for (std::size_t x : vorder) {
      auto m = std::move(s.vertex_members[x]);
      std::sort(m.begin(), m.end(), by_number);
      r.vertex_members.push_back(std::move(m));
    }
    for (std::size_t x : aorder) {
      auto m = std::move(s.arc_members[x]);
      std::sort(m.begin(), m.end(), by_number);
      r.edge_members.push_back(std::move(m));
    }
    r.level_lookup.resize(out.num_levels());
    r.slot_lookup.resize(out.num_slots());
    for (std::size_t i = 0; i < out.num_levels(); ++i) {
      std::vector<std::size_t> owners(out.level(i).begin(), out.level(i).end());
      r.level_lookup[i] = lookup_table(in, owners, r.vertex_members);
    }
    for (std::size_t i = 0; i < out.num_slots(); ++i) {
      std::vector<std::size_t> owners(out.slot(i).begin(), out.slot(i).end());
      r.slot_lookup[i] = lookup_table(in, owners, r.edge_members);
    }
  }

  if (s.has_zeta) {
    RGraphMorphism z{g, r.smoothed, {}, {}};
    for (Cell c : s.zeta_vertices) z.vertex_map.push_back(c.is_vertex() ? Cell::vertex(vnew[c.index]) : Cell::edge(anew[c.index]));
    for (auto& path : s.zeta_edges) {
      for (auto& a : path) a = anew[a];
      z.edge_map.push_back(std::move(path));
    }
    auto report = validate_morphism(z);
    if (!report.ok()) throw InternalError("sweep produced an invalid zeta:\n" + report.describe());
    r.zeta = std::move(z);
  } else {
    r.zeta = from_point_map(g, r.smoothed, [&](Cell c, const Rational& x) { return r.locate(c, x); });
  }
  return r;
}

Rational point_in_window(const RGraph& g, Cell c, const Rational& t, const Rational& eps) {
  if (c.is_vertex()) return g.value(c.index);
  return midpoint(std::max(g.low(c), t - eps), std::min(g.high(c), t + eps));
}

Skeleton identity_skeleton(const RGraph& g) {
  Skeleton s;
  s.levels = g.criticals();
  s.has_members = true;
  s.has_zeta = true;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    s.vertex_level.push_back(g.vertex(v).level);
    s.vertex_members.push_back({Cell::vertex(v)});
    s.zeta_vertices.push_back(Cell::vertex(v));
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    s.arcs.push_back({g.edge(e).slot, g.edge(e).lower, g.edge(e).upper});
    s.arc_members.push_back({Cell::edge(e)});
    s.zeta_edges.push_back({e});
  }
  return s;
}

// ---------------------------------------------------------------------------
// Naive oracle

struct WindowComponents {
  std::vector<std::vector<Cell>> components;
  std::vector<std::size_t> component_of;  // by cell number
};

WindowComponents window_components(const RGraph& g, const Rational& lo, const Rational& hi) {
  const std::size_t n = g.num_cells();
  std::vector<bool> inside(n, false);
  for (std::size_t k = 0; k < n; ++k) inside[k] = g.meets(g.cell_from_number(k), lo, hi);
  detail::DisjointSets ds(n);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const std::size_t k = g.cell_number(Cell::edge(e));
    if (!inside[k]) continue;
    if (inside[g.edge(e).lower]) ds.unite(k, g.edge(e).lower);
    if (inside[g.edge(e).upper]) ds.unite(k, g.edge(e).upper);
  }
  WindowComponents w;
  w.component_of.assign(n, kNoIndex);
  std::vector<std::size_t> label(n, kNoIndex);
  for (std::size_t k = 0; k < n; ++k) {
    if (!inside[k]) continue;
    const std::size_t r = ds.find(k);
    if (label[r] == kNoIndex) {
      label[r] = w.components.size();
      w.components.emplace_back();
    }
    w.components[label[r]].push_back(g.cell_from_number(k));
    w.component_of[k] = label[r];
  }
  return w;
}

// ---------------------------------------------------------------------------
// Sweep

class Sweep {
 public:
  Sweep(const RGraph& g, const Rational& eps, const SmoothOptions& options)
      : g_(g),
        eps_(eps),
        provenance_(options.record_provenance),
        h_(options.forest),
        vnode_(g.num_vertices(), kAbsent),
        enode_(g.num_edges(), kAbsent),
        active_pos_(g.num_cells(), kNoIndex) {}

  Skeleton run() {
    s_.levels = smoothed_criticals(g_.criticals(), eps_);
    s_.has_members = provenance_;
    s_.has_zeta = true;
    s_.zeta_vertices.assign(g_.num_vertices(), Cell{});
    s_.zeta_edges.assign(g_.num_edges(), {});

    const auto& events = s_.levels;
    const auto& crit = g_.criticals();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < events.size() || j < crit.size()) {
      if (j < crit.size() && (i == events.size() || crit[j] < events[i])) {
        original_stop(j++);
      } else {
        const bool also_original = j < crit.size() && crit[j] == events[i];
        event(i++, also_original ? j++ : kNoIndex);
      }
    }
    if (!open_.empty()) throw InternalError("sweep ended with open components");
    return std::move(s_);
  }

 private:
  NodeId add(Cell c) {
    const NodeId x = h_.add_node();
    if (x >= cell_of_.size()) cell_of_.resize(x + 1);
    cell_of_[x] = c;
    if (provenance_) {
      const std::size_t k = g_.cell_number(c);
      active_pos_[k] = active_.size();
      active_.push_back(k);
    }
    return x;
  }

  void remove(NodeId x) {
    h_.remove_node(x);
    if (provenance_) {
      const std::size_t k = g_.cell_number(cell_of_[x]);
      const std::size_t at = active_pos_[k];
      active_pos_[active_.back()] = at;
      active_[at] = active_.back();
      active_.pop_back();
      active_pos_[k] = kNoIndex;
    }
  }

  NodeId node_of(std::size_t cell_number) const {
    const Cell c = g_.cell_from_number(cell_number);
    return c.is_vertex() ? vnode_[c.index] : enode_[c.index];
  }

  static std::size_t lookup(const std::unordered_map<NodeId, std::size_t>& map, NodeId root) {
    auto it = map.find(root);
    if (it == map.end()) throw InternalError("sweep lost track of a window component");
    return it->second;
  }

  std::size_t open_arc(std::size_t slot, std::size_t lower) {
    s_.arcs.push_back({slot, lower, kNoIndex});
    if (provenance_) s_.arc_members.emplace_back();
    riders_.emplace_back();
    return s_.arcs.size() - 1;
  }

  void start_riding(std::size_t e, std::size_t arc) {
    s_.zeta_edges[e] = {arc};
    riders_[arc].push_back(e);
  }

  void original_stop(std::size_t level) {
    for (std::size_t v : g_.level(level)) {
      s_.zeta_vertices[v] = Cell::edge(lookup(open_, h_.find(vnode_[v])));
      for (std::size_t e : g_.up_edges(v)) start_riding(e, lookup(open_, h_.find(enode_[e])));
    }
  }

  void event(std::size_t i, std::size_t original) {
    const Rational& b = s_.levels[i];
    std::span<const std::size_t> entering;
    std::span<const std::size_t> leaving;
    if (auto j = g_.find_level(b + eps_)) entering = g_.level(*j);
    if (auto j = g_.find_level(b - eps_)) leaving = g_.level(*j);

    // A cell of every open component that is still present at b.
    std::unordered_map<std::size_t, NodeId> rep;
    for (std::size_t v : leaving) rep[lookup(open_, h_.find(vnode_[v]))] = vnode_[v];
    for (std::size_t v : entering) {
      for (std::size_t e : g_.down_edges(v)) rep[lookup(open_, h_.find(enode_[e]))] = enode_[e];
    }
    std::vector<std::pair<std::size_t, NodeId>> closing;
    closing.reserve(open_.size());
    for (const auto& [root, arc] : open_) closing.emplace_back(arc, rep.contains(arc) ? rep[arc] : root);
    std::sort(closing.begin(), closing.end());

    // Window at b: edges ending at leaving vertices go, entering vertices come.
    for (std::size_t v : leaving) {
      for (std::size_t e : g_.down_edges(v)) {
        h_.erase(vnode_[v], enode_[e]);
        remove(enode_[e]);
        enode_[e] = kAbsent;
      }
    }
    for (std::size_t v : entering) {
      vnode_[v] = add(Cell::vertex(v));
      const Rational w = g_.value(v) + eps_;
      for (std::size_t e : g_.down_edges(v)) h_.insert(vnode_[v], enode_[e], w);
    }

    std::unordered_map<NodeId, std::size_t> at;
    std::vector<std::pair<NodeId, std::size_t>> created;
    auto vertex_at = [&](NodeId x) {
      const NodeId r = h_.find(x);
      auto [it, fresh] = at.emplace(r, s_.vertex_level.size());
      if (fresh) {
        s_.vertex_level.push_back(i);
        if (provenance_) s_.vertex_members.emplace_back();
        created.emplace_back(r, it->second);
      }
      return it->second;
    };
    for (const auto& [arc, x] : closing) s_.arcs[arc].upper = vertex_at(x);
    for (std::size_t v : entering) vertex_at(vnode_[v]);
    if (original != kNoIndex) {
      for (std::size_t v : g_.level(original)) s_.zeta_vertices[v] = Cell::vertex(vertex_at(vnode_[v]));
    }
    if (provenance_) {
      for (std::size_t k : active_) {
        s_.vertex_members[lookup(at, h_.find(node_of(k)))].push_back(g_.cell_from_number(k));
      }
    }

    // Cells that survive past b, labelled by their component at b.
    std::vector<std::pair<NodeId, std::size_t>> survivors;
    for (std::size_t v : entering) survivors.emplace_back(vnode_[v], vertex_at(vnode_[v]));
    for (std::size_t v : leaving) {
      for (std::size_t e : g_.up_edges(v)) survivors.emplace_back(enode_[e], vertex_at(enode_[e]));
    }
    for (const auto& [r, y] : created) {
      const Cell c = cell_of_[r];
      const bool leaves = c.is_vertex() && g_.value(c.index) + eps_ == b;
      if (!leaves) survivors.emplace_back(r, y);
    }

    // Window just after b: leaving vertices go, edges above entering vertices come.
    for (std::size_t v : leaving) {
      for (std::size_t e : g_.up_edges(v)) h_.erase(vnode_[v], enode_[e]);
      remove(vnode_[v]);
      vnode_[v] = kAbsent;
    }
    for (std::size_t v : entering) {
      const Rational w = g_.value(v) + eps_;
      for (std::size_t e : g_.up_edges(v)) {
        enode_[e] = add(Cell::edge(e));
        h_.insert(vnode_[v], enode_[e], w);
      }
    }

    std::unordered_map<NodeId, std::size_t> next;
    for (const auto& [x, y] : survivors) {
      const NodeId r = h_.find(x);
      auto it = next.find(r);
      if (it == next.end()) {
        next.emplace(r, open_arc(i, y));
      } else if (s_.arcs[it->second].lower != y) {
        throw InternalError("component after " + b.str() + " descends from two components at it");
      }
    }

    for (const auto& [arc, x] : closing) {
      for (std::size_t e : riders_[arc]) {
        if (!(b < g_.high(Cell::edge(e)))) continue;
        const std::size_t to = lookup(next, h_.find(enode_[e]));
        s_.zeta_edges[e].push_back(to);
        riders_[to].push_back(e);
      }
      std::vector<std::size_t>().swap(riders_[arc]);
    }
    if (original != kNoIndex) {
      for (std::size_t v : g_.level(original)) {
        for (std::size_t e : g_.up_edges(v)) start_riding(e, lookup(next, h_.find(enode_[e])));
      }
    }
    if (provenance_) {
      for (std::size_t k : active_) {
        s_.arc_members[lookup(next, h_.find(node_of(k)))].push_back(g_.cell_from_number(k));
      }
    }
    open_ = std::move(next);
  }

  const RGraph& g_;
  Rational eps_;
  bool provenance_;
  ConnectivityIndex h_;
  std::vector<NodeId> vnode_;
  std::vector<NodeId> enode_;
  std::vector<Cell> cell_of_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> active_pos_;
  std::unordered_map<NodeId, std::size_t> open_;  // component root -> open arc
  std::vector<std::vector<std::size_t>> riders_;  // arc -> input edges whose zeta path is at it
  Skeleton s_;
};

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<Cell>& SmoothingResult::members(Cell smoothed_cell) const {
  if (!has_provenance) throw std::logic_error("smoothing was computed without provenance");
  return smoothed_cell.is_vertex() ? vertex_members[smoothed_cell.index] : edge_members[smoothed_cell.index];
}

Cell SmoothingResult::locate(Cell c, const Rational& t) const {
  if (!has_provenance) throw std::logic_error("smoothing was computed without provenance");
  const auto& levels = smoothed->criticals();
  const std::size_t n = input->cell_number(c);
  auto search = [&](const std::vector<std::pair<std::size_t, std::size_t>>& table) -> std::optional<std::size_t> {
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(n, std::size_t{0}));
    if (it == table.end() || it->first != n) return std::nullopt;
    return it->second;
  };
  auto it = std::lower_bound(levels.begin(), levels.end(), t);
  std::optional<Cell> found;
  if (it != levels.end() && *it == t) {
    if (auto y = search(level_lookup[static_cast<std::size_t>(it - levels.begin())])) found = Cell::vertex(*y);
  } else if (it != levels.begin() && it != levels.end()) {
    if (auto y = search(slot_lookup[static_cast<std::size_t>(it - levels.begin()) - 1])) found = Cell::edge(*y);
  }
  if (!found) throw std::invalid_argument(input->cell_id(c) + " misses the window at " + t.str());
  return *found;
}

SmoothingResult smooth_naive(GraphRef gref, const Rational& eps) {
  if (eps < Rational(0)) throw std::invalid_argument("negative smoothing parameter " + eps.str());
  const RGraph& g = *gref;
  Skeleton s;
  s.levels = smoothed_criticals(g.criticals(), eps);
  s.has_members = true;
  std::vector<std::vector<std::size_t>> vertex_of(s.levels.size());
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    auto w = window_components(g, s.levels[i] - eps, s.levels[i] + eps);
    const std::size_t offset = s.vertex_level.size();
    for (auto& comp : w.components) {
      s.vertex_level.push_back(i);
      s.vertex_members.push_back(std::move(comp));
    }
    for (auto& x : w.component_of) {
      if (x != kNoIndex) x += offset;
    }
    vertex_of[i] = std::move(w.component_of);
  }
  for (std::size_t i = 0; i + 1 < s.levels.size(); ++i) {
    const Rational& lo = s.levels[i];
    const Rational& hi = s.levels[i + 1];
    auto w = window_components(g, midpoint(lo, hi) - eps, midpoint(lo, hi) + eps);
    for (auto& comp : w.components) {
      const Cell c = comp.front();
      // An edge that starts exactly at the top of the lower window is
      // attached through its lower vertex; symmetrically above.
      const Cell below = g.meets(c, lo - eps, lo + eps) ? c : Cell::vertex(g.edge(c.index).lower);
      const Cell above = g.meets(c, hi - eps, hi + eps) ? c : Cell::vertex(g.edge(c.index).upper);
      const std::size_t lower = vertex_of[i][g.cell_number(below)];
      const std::size_t upper = vertex_of[i + 1][g.cell_number(above)];
      if (lower == kNoIndex || upper == kNoIndex) throw InternalError("slot component without an attachment");
      s.arcs.push_back({i, lower, upper});
      s.arc_members.push_back(std::move(comp));
    }
  }
  return assemble(std::move(gref), eps, std::move(s));
}

SmoothingResult smooth_sweep(GraphRef gref, const Rational& eps, const SmoothOptions& options) {
  if (eps < Rational(0)) throw std::invalid_argument("negative smoothing parameter " + eps.str());
  if (eps == Rational(0)) return assemble(gref, eps, identity_skeleton(*gref));
  Skeleton s = Sweep(*gref, eps, options).run();
  return assemble(std::move(gref), eps, std::move(s));
}

std::pair<Cell, Rational> representative(const SmoothingResult& u, Cell y, const Rational& t) {
  const Cell c = u.members(y).front();
  return {c, point_in_window(*u.input, c, t, u.eps)};
}

RGraphMorphism match_smoothings(const SmoothingResult& a, const SmoothingResult& b) {
  if (!same_graph(a.input, b.input) || a.eps != b.eps) {
    throw std::invalid_argument("smoothings of different graphs or parameters");
  }
  return from_point_map(a.smoothed, b.smoothed,
                        [&](Cell y, const Rational& t) { return b.locate(a.members(y).front(), t); });
}

RGraphMorphism widen(const SmoothingResult& narrow, const SmoothingResult& wide) {
  if (!same_graph(narrow.input, wide.input) || wide.eps < narrow.eps) {
    throw std::invalid_argument("widen needs smoothings of one graph with increasing parameters");
  }
  return from_point_map(narrow.smoothed, wide.smoothed,
                        [&](Cell y, const Rational& t) { return wide.locate(representative(narrow, y, t).first, t); });
}

SemigroupCheck compose_smoothings(GraphRef g, const Rational& eps1, const Rational& eps2,
                                  const SmoothOptions& options) {
  SemigroupCheck out;
  out.first = smooth_sweep(g, eps1, options);
  out.second = smooth_sweep(out.first.smoothed, eps2, options);
  out.whole = smooth_sweep(g, eps1 + eps2, options);
  out.witness = from_point_map(out.second.smoothed, out.whole.smoothed, [&](Cell y, const Rational& t) {
    const auto [c1, x1] = representative(out.second, y, t);
    const auto [c0, x0] = representative(out.first, c1, x1);
    (void)x0;
    return out.whole.locate(c0, t);
  });
  if (!is_isomorphism(out.witness)) {
    out.diagnostic = "provenance matching is not an isomorphism";
    return out;
  }
  const RGraphMorphism path = compose(compose(out.first.zeta, out.second.zeta), out.witness);
  if (auto diff = first_difference(path, out.whole.zeta)) {
    out.diagnostic = "zeta composite differs at " + *diff;
    return out;
  }
  out.coherent = true;
  return out;
}

RGraphMorphism smooth_morphism(const RGraphMorphism& alpha, const SmoothingResult& uf, const SmoothingResult& ug) {
  if (!same_graph(alpha.source, uf.input) || !same_graph(alpha.target, ug.input) || uf.eps != ug.eps) {
    throw std::invalid_argument("smoothings do not match the morphism");
  }
  return from_point_map(uf.smoothed, ug.smoothed, [&](Cell y, const Rational& t) {
    std::optional<Cell> image;
    for (Cell c : uf.members(y)) {
      const Rational x = point_in_window(*uf.input, c, t, uf.eps);
      const Cell cell = ug.locate(apply(alpha, c, x), t);
      if (image && *image != cell) {
        throw InternalError("smoothed map is not well defined at " + uf.smoothed->cell_id(y));
      }
      image = cell;
    }
    return *image;
  });
}

RGraphMorphism shift_compose(const RGraphMorphism& alpha, const SmoothingResult& uf, const SmoothingResult& ug,
                             const SmoothingResult& ug2) {
  if (!same_graph(alpha.source, uf.input) || !same_graph(alpha.target, ug.smoothed) ||
      !same_graph(ug.input, ug2.input) || uf.eps != ug.eps || ug2.eps != ug.eps + ug.eps) {
    throw std::invalid_argument("smoothings do not match the shifted morphism");
  }
  return from_point_map(uf.smoothed, ug2.smoothed, [&](Cell y, const Rational& t) {
    std::optional<Cell> image;
    for (Cell c : uf.members(y)) {
      const Rational x = point_in_window(*uf.input, c, t, uf.eps);
      const auto [c0, x0] = representative(ug, apply(alpha, c, x), x);
      (void)x0;
      const Cell cell = ug2.locate(c0, t);
      if (image && *image != cell) {
        throw InternalError("shifted map is not well defined at " + uf.smoothed->cell_id(y));
      }
      image = cell;
    }
    return *image;
  });
}

}  // namespace reebcat
