#include "reebcat/interleave.hpp"

#include <algorithm>

#include "reebcat/cosheaf.hpp"
#include "reebcat/detail/util.hpp"

namespace reebcat {

namespace {

struct BudgetExceeded {};

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

/// a then b, where a: X -> U_a Y and b: Y -> U_b Z, landing in out = U_(a+b) Z.
RGraphMorphism relay(const RGraphMorphism& a, const SmoothingResult& ua, const RGraphMorphism& b,
                     const SmoothingResult& ub, const SmoothingResult& out) {
  return from_point_map(a.source, out.smoothed, [&](Cell c, const Rational& t) {
    const auto [c1, x1] = representative(ua, apply(a, c, t), t);
    const auto [c2, x2] = representative(ub, apply(b, c1, x1), x1);
    (void)x2;
    return out.locate(c2, t);
  });
}

// ---------------------------------------------------------------------------
// Exhaustive search

/// Position of a cell in a presentation over C: 2i for level i, 2i+1 for slot i.
std::size_t position(const RGraph& g, Cell c) {
  return c.is_vertex() ? 2 * g.vertex(c.index).level : 2 * g.edge(c.index).slot + 1;
}

Rational position_value(const std::vector<Rational>& c, std::size_t p) {
  return p % 2 == 0 ? c[p / 2] : midpoint(c[p / 2], c[p / 2 + 1]);
}

class CertificateSearch {
 public:
  CertificateSearch(SettingRef setting, std::size_t budget) : s_(std::move(setting)), budget_(budget) {
    const InterleaveSetting& s = *s_;
    std::vector<Rational> values;
    for (const auto* h : {s.f.get(), s.g.get()}) {
      for (const Rational& a : h->criticals()) {
        for (const Rational& d : {Rational(0), s.eps, s.eps + s.eps}) {
          values.push_back(a - d);
          values.push_back(a + d);
        }
      }
    }
    values_ = merge_values({}, values);
    sides_[0] = make_side(s.f, s.ug, s.uf, s.uf2);
    sides_[1] = make_side(s.g, s.uf, s.ug, s.ug2);
    sides_[1].offset = sides_[0].src.fine.num_cells();
    const std::size_t n = sides_[1].offset + sides_[1].src.fine.num_cells();
    vars_.resize(n);
    value_.assign(n, std::nullopt);
    watchers_.resize(n);
    for (int k = 0; k < 2; ++k) init_vars(k);
    order_.resize(n);
    for (std::size_t v = 0; v < n; ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(vars_[a].pos, vars_[a].side) < std::tie(vars_[b].pos, vars_[b].side);
    });
  }

  SearchResult run() {
    SearchResult out;
    for (const auto& v : vars_) {
      if (v.domain.empty()) {
        out.status = SearchStatus::kExhausted;
        return out;
      }
    }
    try {
      out.status = extend(0) ? SearchStatus::kFound : SearchStatus::kExhausted;
    } catch (const BudgetExceeded&) {
      out.status = SearchStatus::kUnknown;
    }
    out.nodes = nodes_;
    if (out.status == SearchStatus::kFound) out.certificate = certificate();
    return out;
  }

 private:
  /// One direction: source X -> U_eps Y.
  struct Side {
    GraphRef source;
    const SmoothingResult* target;  // U_eps Y
    const SmoothingResult* self;    // U_eps X
    const SmoothingResult* self2;   // U_2eps X
    Subdivision src;
    Subdivision tgt;
    std::size_t offset = 0;
  };

  struct Rep {
    std::size_t var;
    Rational x;
  };

  struct Var {
    int side;
    Cell cell;  // fine source cell
    std::size_t pos;
    Rational t;
    Cell goal;  // zeta^2eps of the cell, in U_2eps X
    std::vector<Cell> domain;
    std::vector<Rep> reps;  // per domain value
  };

  struct Watch {
    std::size_t var;
    Rational x;
  };

  Side make_side(const GraphRef& source, const SmoothingResult& target, const SmoothingResult& self,
                 const SmoothingResult& self2) {
    Side side{source, &target, &self, &self2, refine(*source, values_), refine(*target.smoothed, values_), 0};
    return side;
  }

  std::size_t var_of(int side, Cell fine) const {
    return sides_[side].offset + sides_[side].src.fine.cell_number(fine);
  }

  void init_vars(int k) {
    const Side& side = sides_[k];
    const Side& other = sides_[1 - k];
    const RGraph& src = side.src.fine;
    const RGraph& tgt = side.tgt.fine;
    for (std::size_t n = 0; n < src.num_cells(); ++n) {
      const Cell c = src.cell_from_number(n);
      Var& v = vars_[side.offset + n];
      v.side = k;
      v.cell = c;
      v.pos = position(src, c);
      v.t = position_value(values_, v.pos);
      v.goal = side.self2->locate(to_coarse(side.src, c), v.t);
      if (c.is_vertex()) {
        for (std::size_t y : tgt.level(v.pos / 2)) v.domain.push_back(Cell::vertex(y));
      } else {
        for (std::size_t y : tgt.slot(v.pos / 2)) v.domain.push_back(Cell::edge(y));
      }
      for (Cell y : v.domain) {
        const Cell coarse = to_coarse(side.tgt, y);
        std::optional<std::pair<Cell, Rational>> rep;
        for (Cell m : side.target->members(coarse)) {
          if (other.source->meets(m, v.t, v.t)) {
            rep.emplace(m, v.t);
            break;
          }
        }
        if (!rep) rep = representative(*side.target, coarse, v.t);
        v.reps.push_back({var_of(1 - k, to_fine(other.src, rep->first, rep->second)), rep->second});
      }
    }
  }

  /// Does the value z of the opposite variable carry watcher w into its goal?
  bool lands(std::size_t w, const Rational& x, Cell z) const {
    const Var& v = vars_[w];
    const Side& side = sides_[v.side];
    const Side& other = sides_[1 - v.side];
    const auto [c, cx] = representative(*side.self, to_coarse(other.tgt, z), x);
    (void)cx;
    return side.self2->locate(c, v.t) == v.goal;
  }

  bool consistent(std::size_t vi, std::size_t k) const {
    const Var& v = vars_[vi];
    const Cell y = v.domain[k];
    const RGraph& src = sides_[v.side].src.fine;
    const RGraph& tgt = sides_[v.side].tgt.fine;
    if (v.cell.is_edge()) {
      const Edge& e = src.edge(v.cell.index);
      const auto& lower = value_[var_of(v.side, Cell::vertex(e.lower))];
      if (lower && *lower != Cell::vertex(tgt.edge(y.index).lower)) return false;
      const auto& upper = value_[var_of(v.side, Cell::vertex(e.upper))];
      if (upper && *upper != Cell::vertex(tgt.edge(y.index).upper)) return false;
    } else {
      for (std::size_t e : src.down_edges(v.cell.index)) {
        const auto& img = value_[var_of(v.side, Cell::edge(e))];
        if (img && Cell::vertex(tgt.edge(img->index).upper) != y) return false;
      }
      for (std::size_t e : src.up_edges(v.cell.index)) {
        const auto& img = value_[var_of(v.side, Cell::edge(e))];
        if (img && Cell::vertex(tgt.edge(img->index).lower) != y) return false;
      }
    }
    const Rep& r = v.reps[k];
    if (value_[r.var] && !lands(vi, r.x, *value_[r.var])) return false;
    for (const Watch& w : watchers_[vi]) {
      if (!lands(w.var, w.x, y)) return false;
    }
    return true;
  }

  /// Unassigned variable with the fewest consistent values, ties broken by
  /// position; none when some variable has no value left.
  std::optional<std::size_t> choose(std::vector<std::size_t>& values) const {
    std::optional<std::size_t> best;
    std::vector<std::size_t> ok;
    for (std::size_t vi : order_) {
      if (value_[vi]) continue;
      ok.clear();
      for (std::size_t k = 0; k < vars_[vi].domain.size(); ++k) {
        if (consistent(vi, k)) ok.push_back(k);
        if (best && ok.size() >= values.size()) break;
      }
      if (ok.empty()) return std::nullopt;
      if (!best || ok.size() < values.size()) {
        best = vi;
        values = ok;
        if (values.size() == 1) break;
      }
    }
    return best;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    std::vector<std::size_t> values;
    const auto chosen = choose(values);
    if (!chosen) return false;
    const std::size_t vi = *chosen;
    Var& v = vars_[vi];
    for (std::size_t k : values) {
      if (++nodes_ > budget_) throw BudgetExceeded{};
      value_[vi] = v.domain[k];
      const Rep& r = v.reps[k];
      const bool watching = !value_[r.var];
      if (watching) watchers_[r.var].push_back({vi, r.x});
      if (extend(depth + 1)) return true;
      if (watching) watchers_[r.var].pop_back();
      value_[vi].reset();
    }
    return false;
  }

  RGraphMorphism extract(int k) const {
    const Side& side = sides_[k];
    return from_point_map(side.source, side.target->smoothed, [&](Cell c, const Rational& x) {
      return to_coarse(side.tgt, *value_[var_of(k, to_fine(side.src, c, x))]);
    });
  }

  Certificate certificate() const {
    Certificate c{s_, extract(0), extract(1)};
    auto check = verify_certificate(c);
    if (!check.ok) throw InternalError("search produced a failing certificate: " + check.diagnostic.value_or(""));
    return c;
  }

  SettingRef s_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Rational> values_;
  Side sides_[2];
  std::vector<Var> vars_;
  std::vector<std::size_t> order_;
  std::vector<std::optional<Cell>> value_;
  std::vector<std::vector<Watch>> watchers_;
};

// ---------------------------------------------------------------------------
// Realizations of an abstract graph

struct Realization {
  RGraph graph;
  std::vector<std::size_t> origin;  // cell number -> domain edge, kNoIndex for domain vertices
};

Realization realize_with_origin(const Domain& x, const std::vector<Rational>& values) {
  require(values.size() == x.vertices.size(), "one value per domain vertex");
  std::vector<Rational> levels = merge_values({}, values);
  auto level_of = [&](const Rational& a) {
    return static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), a) - levels.begin());
  };
  detail::IdPool pool;
  std::vector<Vertex> vertices;
  for (std::size_t v = 0; v < x.vertices.size(); ++v) {
    if (!pool.take(x.vertices[v])) throw std::invalid_argument("duplicate domain vertex " + x.vertices[v]);
    vertices.push_back({x.vertices[v], level_of(values[v])});
  }
  std::vector<std::size_t> vertex_origin(vertices.size(), kNoIndex);
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_origin;
  for (std::size_t k = 0; k < x.edges.size(); ++k) {
    auto [a, b] = x.edges[k];
    require(a < vertices.size() && b < vertices.size(), "domain edge references an unknown vertex");
    if (values[a] == values[b]) {
      throw std::invalid_argument("domain edge " + x.vertices[a] + "-" + x.vertices[b] + " has equal endpoint values");
    }
    if (values[b] < values[a]) std::swap(a, b);
    const std::string base = x.vertices[a] + "-" + x.vertices[b];
    std::size_t prev = a;
    for (std::size_t i = vertices[a].level + 1; i <= vertices[b].level; ++i) {
      std::size_t next = b;
      if (i < vertices[b].level) {
        next = vertices.size();
        vertices.push_back({pool.fresh(base + "@" + std::to_string(i)), i});
        vertex_origin.push_back(k);
      }
      edges.push_back({pool.fresh(base + ":" + std::to_string(i - 1)), i - 1, prev, next});
      edge_origin.push_back(k);
      prev = next;
    }
  }
  Realization r{RGraph(std::move(levels), std::move(vertices), std::move(edges)), {}};
  r.origin = std::move(vertex_origin);
  r.origin.insert(r.origin.end(), edge_origin.begin(), edge_origin.end());
  return r;
}

/// Cell of a realization holding the point of domain edge k with value y.
Cell cell_on_edge(const Realization& r, std::size_t k, const Rational& y) {
  const RGraph& g = r.graph;
  for (std::size_t n = 0; n < g.num_cells(); ++n) {
    if (r.origin[n] != k) continue;
    const Cell c = g.cell_from_number(n);
    if (c.is_vertex() ? g.value(c.index) == y : (g.low(c) < y && y < g.high(c))) return c;
  }
  throw InternalError("point missing from its domain edge");
}

/// alpha: F -> U_eps G moving each point of the domain from its F value to its G value.
RGraphMorphism transport(const Domain& x, const Realization& from, const std::vector<Rational>& fv,
                         const Realization& to, const std::vector<Rational>& tv, const SmoothingResult& u,
                         const GraphRef& source) {
  return from_point_map(source, u.smoothed, [&](Cell c, const Rational& t) {
    const std::size_t k = from.origin[from.graph.cell_number(c)];
    if (k == kNoIndex) return u.locate(c, t);
    auto [a, b] = x.edges[k];
    const Rational s = (t - fv[a]) / (fv[b] - fv[a]);
    const Rational y = tv[a] + (tv[b] - tv[a]) * s;
    Cell on;
    if (y == tv[a]) {
      on = Cell::vertex(a);
    } else if (y == tv[b]) {
      on = Cell::vertex(b);
    } else {
      on = cell_on_edge(to, k, y);
    }
    return u.locate(on, t);
  });
}

}  // namespace

// ---------------------------------------------------------------------------

SettingRef make_setting(GraphRef f, GraphRef g, const Rational& eps) {
  require(!(eps < Rational(0)), "negative interleaving parameter");
  auto s = std::make_shared<InterleaveSetting>();
  s->f = f;
  s->g = g;
  s->eps = eps;
  s->uf = smooth(f, eps);
  s->uf2 = smooth(f, eps + eps);
  if (same_graph(f, g)) {
    s->ug = s->uf;
    s->ug2 = s->uf2;
  } else {
    s->ug = smooth(g, eps);
    s->ug2 = smooth(g, eps + eps);
  }
  return s;
}

Verification verify_certificate(const Certificate& c) {
  const InterleaveSetting& s = *c.setting;
  require(same_graph(c.alpha.source, s.f) && same_graph(c.alpha.target, s.ug.smoothed),
          "alpha must map f to the eps-smoothing of g");
  require(same_graph(c.beta.source, s.g) && same_graph(c.beta.target, s.uf.smoothed),
          "beta must map g to the eps-smoothing of f");
  for (const auto* m : {&c.alpha, &c.beta}) {
    auto report = validate_morphism(*m);
    if (!report.ok()) {
      return {false, std::string(m == &c.alpha ? "alpha" : "beta") + " is not a morphism: " + report.describe()};
    }
  }
  const RGraphMorphism left = compose(c.alpha, shift_compose(c.beta, s.ug, s.uf, s.uf2));
  if (auto d = first_difference(left, s.uf2.zeta)) {
    return {false, "f cell " + *d + ": beta after alpha differs from zeta"};
  }
  const RGraphMorphism right = compose(c.beta, shift_compose(c.alpha, s.uf, s.ug, s.ug2));
  if (auto d = first_difference(right, s.ug2.zeta)) {
    return {false, "g cell " + *d + ": alpha after beta differs from zeta"};
  }
  return {true, std::nullopt};
}

Certificate swap(const Certificate& c) {
  const InterleaveSetting& s = *c.setting;
  auto t = std::make_shared<InterleaveSetting>(InterleaveSetting{s.g, s.f, s.eps, s.ug, s.uf, s.ug2, s.uf2});
  return {t, c.beta, c.alpha};
}

Certificate zeta_certificate(GraphRef f, const Rational& eps) {
  SettingRef s = make_setting(f, f, eps);
  return {s, s->uf.zeta, s->uf.zeta};
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound:
      return "found";
    case SearchStatus::kExhausted:
      return "exhausted";
    case SearchStatus::kUnknown:
      return "unknown";
  }
  return "?";
}

SearchResult search_certificate(const SettingRef& setting, std::size_t budget) {
  return CertificateSearch(setting, budget).run();
}

SearchResult search_certificate(GraphRef f, GraphRef g, const Rational& eps, std::size_t budget) {
  return search_certificate(make_setting(std::move(f), std::move(g), eps), budget);
}

bool finite_distance_check(const RGraph& f, const RGraph& g) { return num_components(f) == num_components(g); }

DistanceBracket distance_bracket(GraphRef f, GraphRef g, const Rational& tol, std::size_t budget) {
  require(Rational(0) < tol, "tolerance must be positive");
  DistanceBracket out;
  if (!finite_distance_check(*f, *g)) {
    out.infinite = true;
    return out;
  }
  auto probe = [&](const Rational& eps) {
    SearchResult r = search_certificate(f, g, eps, budget);
    out.transcript.push_back({eps, r.status, r.nodes});
    if (r.status == SearchStatus::kUnknown) out.unknown_gaps = true;
    return r;
  };
  const auto values = merge_values(f->criticals(), g->criticals());
  Rational lo(0);
  Rational hi = values.empty() ? tol : values.back() - values.front() + tol;

  SearchResult first = probe(tol);
  if (first.status == SearchStatus::kFound) {
    out.upper = tol;
    out.witness = std::move(first.certificate);
    return out;
  }
  if (first.status == SearchStatus::kExhausted) lo = tol;
  if (hi < lo) hi = lo + tol;
  SearchResult top = probe(hi);
  if (top.status != SearchStatus::kFound) {
    // Past the diameter an interleaving always exists; without a witness
    // the upper end rests on that alone.
    out.lower = lo;
    out.upper = hi;
    out.unknown_gaps = true;
    return out;
  }
  out.witness = std::move(top.certificate);
  while (tol < hi - lo) {
    const Rational mid = midpoint(lo, hi);
    SearchResult r = probe(mid);
    if (r.status == SearchStatus::kFound) {
      hi = mid;
      out.witness = std::move(r.certificate);
    } else if (r.status == SearchStatus::kExhausted) {
      lo = mid;
    } else {
      break;
    }
  }
  out.lower = lo;
  out.upper = hi;
  return out;
}

Certificate lift_certificate(const Certificate& c, const Rational& eps) {
  const InterleaveSetting& s = *c.setting;
  require(!(eps < s.eps), "a certificate can only be lifted to a larger parameter");
  if (eps == s.eps) return c;
  SettingRef t = make_setting(s.f, s.g, eps);
  Certificate out{t, compose(c.alpha, widen(s.ug, t->ug)), compose(c.beta, widen(s.uf, t->uf))};
  auto check = verify_certificate(out);
  if (!check.ok) throw InternalError("lifted certificate fails: " + check.diagnostic.value_or(""));
  return out;
}

Certificate compose_certificates(const Certificate& first, const Certificate& second) {
  const InterleaveSetting& a = *first.setting;
  const InterleaveSetting& b = *second.setting;
  require(same_graph(a.g, b.f), "certificates do not share their middle graph");
  SettingRef t = make_setting(a.f, b.g, a.eps + b.eps);
  Certificate out{t, relay(first.alpha, a.ug, second.alpha, b.ug, t->ug),
                  relay(second.beta, b.uf, first.beta, a.uf, t->uf)};
  auto check = verify_certificate(out);
  if (!check.ok) throw InternalError("composed certificate fails: " + check.diagnostic.value_or(""));
  return out;
}

Certificate smooth_certificate(const Certificate& c, const Rational& delta) {
  const InterleaveSetting& s = *c.setting;
  const SmoothingResult sf = smooth(s.f, delta);
  const SmoothingResult sg = smooth(s.g, delta);
  SettingRef t = make_setting(sf.smoothed, sg.smoothed, s.eps);
  // U_delta a: U_delta X -> U_delta U_eps Y = U_(eps+delta) Y = U_eps U_delta Y
  auto lift = [&](const RGraphMorphism& a, const SmoothingResult& sx, const GraphRef& y, const SmoothingResult& out) {
    const SemigroupCheck outer = compose_smoothings(y, s.eps, delta);
    const SemigroupCheck inner = compose_smoothings(y, delta, s.eps);
    RGraphMorphism m = compose(compose(smooth_morphism(a, sx, outer.second), outer.witness), inverse(inner.witness));
    if (!same_graph(m.target, out.smoothed)) throw InternalError("smoothed certificate lands in the wrong graph");
    m.target = out.smoothed;
    return m;
  };
  Certificate out{t, lift(c.alpha, sf, s.g, t->ug), lift(c.beta, sg, s.f, t->uf)};
  auto check = verify_certificate(out);
  if (!check.ok) throw InternalError("smoothed certificate fails: " + check.diagnostic.value_or(""));
  return out;
}

RGraph realize(const Domain& x, const std::vector<Rational>& values) { return realize_with_origin(x, values).graph; }

Certificate stability_certificate(const Domain& x, const std::vector<Rational>& fv, const std::vector<Rational>& gv) {
  require(fv.size() == gv.size(), "value assignments differ in size");
  Realization rf = realize_with_origin(x, fv);
  Realization rg = realize_with_origin(x, gv);
  Rational eps(0);
  for (std::size_t v = 0; v < fv.size(); ++v) eps = std::max(eps, abs(fv[v] - gv[v]));
  GraphRef f = share(rf.graph);
  GraphRef g = share(rg.graph);
  SettingRef s = make_setting(f, g, eps);
  Certificate out{s, transport(x, rf, fv, rg, gv, s->ug, f), transport(x, rg, gv, rf, fv, s->uf, g)};
  auto check = verify_certificate(out);
  if (!check.ok) throw InternalError("stability certificate fails: " + check.diagnostic.value_or(""));
  return out;
}

QuantifiedIso quantified_iso_check(GraphRef f, GraphRef g, std::size_t budget) {
  QuantifiedIso out;
  const auto values = merge_values(f->criticals(), g->criticals());
  Rational hbar(1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const Rational gap = values[i + 1] - values[i];
    if (i == 0 || gap < hbar) hbar = gap;
  }
  out.eps = hbar / Rational(8);
  if (!finite_distance_check(*f, *g)) {
    out.status = SearchStatus::kExhausted;
    return out;
  }
  SearchResult r = search_certificate(f, g, out.eps, budget);
  out.status = r.status;
  if (r.status != SearchStatus::kFound) return out;
  const Certificate& c = *r.certificate;
  const SmoothingResult& ug = c.setting->ug;
  // Below hbar / 4 each window component holds a single point at its centre.
  IsoWitness w = from_point_map(f, g, [&](Cell cell, const Rational& x) {
    std::optional<Cell> centre;
    for (Cell m : ug.members(apply(c.alpha, cell, x))) {
      if (!g->meets(m, x, x)) continue;
      if (centre) throw InternalError("window component with two centres");
      centre = m;
    }
    if (!centre) throw InternalError("window component without a centre");
    return *centre;
  });
  if (!is_isomorphism(w)) throw InternalError("interleaving below hbar / 4 did not give an isomorphism");
  out.witness = std::move(w);
  return out;
}

}  // namespace reebcat
