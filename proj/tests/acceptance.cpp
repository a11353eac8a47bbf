// Acceptance run: one PASS/FAIL line per criterion, each with its time limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "random_graphs.hpp"
#include "reebcat/cosheaf.hpp"
#include "reebcat/detail/util.hpp"
#include "reebcat/interleave.hpp"

using namespace reebcat;
using reebcat::testing::random_graph;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

GraphRef reduced(const GraphRef& g) { return share(reduce(*g).coarse); }

bool iso(const GraphRef& a, const GraphRef& b) { return is_isomorphic(a, b).has_value(); }

std::size_t cycle_rank(const RGraph& g) { return g.num_edges() + num_components(g) - g.num_vertices(); }

/// Same graph rebuilt with fresh ids in shuffled order.
RGraph shuffled(const RGraph& g, std::mt19937_64& rng) {
  std::vector<std::size_t> vs(g.num_vertices());
  std::vector<std::size_t> es(g.num_edges());
  std::iota(vs.begin(), vs.end(), 0);
  std::iota(es.begin(), es.end(), 0);
  std::shuffle(vs.begin(), vs.end(), rng);
  std::shuffle(es.begin(), es.end(), rng);
  GraphBuilder b;
  for (std::size_t v : vs) b.vertex("p" + std::to_string(v), g.value(v));
  for (std::size_t e : es) {
    b.edge("q" + std::to_string(e), "p" + std::to_string(g.edge(e).lower), "p" + std::to_string(g.edge(e).upper));
  }
  return b.build();
}

/// Graph with at most `cells` cells.
GraphRef small_graph(std::mt19937_64& rng, int vertices, int edges, int span, std::size_t cells, int den = 1) {
  for (;;) {
    RGraph g = random_graph(rng, vertices, edges, span, den);
    if (g.num_cells() <= cells) return share(std::move(g));
  }
}

Domain random_domain(std::mt19937_64& rng, int n) {
  Domain x;
  for (int v = 0; v < n; ++v) x.vertices.push_back("p" + std::to_string(v));
  return x;
}

/// Edges of x on which every assignment differs at the endpoints.
void add_edges(Domain& x, std::mt19937_64& rng, int count, const std::vector<std::vector<Rational>>& values) {
  const auto n = x.vertices.size();
  for (int k = 0; k < count; ++k) {
    const std::size_t a = rng() % n;
    const std::size_t b = rng() % n;
    bool ok = a != b;
    for (const auto& v : values) ok = ok && v[a] != v[b];
    if (ok) x.edges.emplace_back(a, b);
  }
}

Rational sup_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational d(0);
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, abs(a[i] - b[i]));
  return d;
}

// ---------------------------------------------------------------------------

Outcome figures() {
  Outcome out;
  GraphRef line = share(line_graph(0, 1));
  GraphRef loop = share(loop_graph(0, 1));
  GraphRef fork = share(fork_graph());
  for (const Rational& e : {q(1, 8), q(1, 4), q(3, 8), q(7, 16), q(1, 2), q(5, 8), q(1), q(3)}) {
    const std::string at = " at eps " + e.str();
    out.require(iso(smooth(line, e).smoothed, share(line_graph(-e, 1 + e))), "LINE" + at);

    RGraph moved = GraphBuilder()
                       .vertex("u", -1 - e)
                       .vertex("w", e)
                       .vertex("x", 1 + e)
                       .vertex("y", 1 + e)
                       .edge("uw", "u", "w")
                       .edge("wx", "w", "x")
                       .edge("wy", "w", "y")
                       .build();
    out.require(iso(smooth(fork, e).smoothed, share(moved)), "FORK" + at);

    GraphRef u = smooth(loop, e).smoothed;
    const bool thin = e + e < 1;
    out.require((cycle_rank(*u) > 0) == thin, "LOOP cycle" + at);
    if (thin) {
      RGraph ring = GraphBuilder()
                        .vertex("a", -e)
                        .vertex("b", e)
                        .vertex("c", 1 - e)
                        .vertex("d", 1 + e)
                        .edge("ab", "a", "b")
                        .edge("bc", "b", "c")
                        .edge("cb", "b", "c")
                        .edge("cd", "c", "d")
                        .build();
      out.require(iso(u, share(ring)), "LOOP cycle span" + at);
    } else {
      out.require(iso(u, share(line_graph(-e, 1 + e))), "LOOP without cycle" + at);
    }
  }
  return out;
}

/// Component count of g over the closed window [t - eps, t + eps], read off
/// the Reeb cosheaf on a slightly larger open interval.
std::size_t window_count(const Cosheaf& f, const std::vector<Rational>& s, const Rational& t, const Rational& eps) {
  Rational pad(1);
  for (const Rational& a : s) {
    for (const Rational& end : {t - eps, t + eps}) {
      if (a != end) pad = std::min(pad, abs(a - end) / Rational(2));
    }
  }
  return evaluate(f, Interval::open(t - eps - pad, t + eps + pad)).components.size();
}

Outcome critical_set_law() {
  Outcome out;
  std::mt19937_64 rng(101);
  const std::vector<Rational> pool = {q(1, 3), q(2, 3), q(5, 4), q(7, 5), q(1, 7), q(3, 2), q(9, 4)};
  for (int round = 0; round < 300 && out.ok; ++round) {
    GraphRef g = share(random_graph(rng, 3 + round % 8, 2 + round % 10, 6));
    const auto& s = g->criticals();
    std::set<Rational> gaps;
    for (const Rational& a : s) {
      for (const Rational& b : s) gaps.insert(a - b);
    }
    Rational e = pool[round % pool.size()];
    for (std::size_t k = 1; gaps.count(e + e); ++k) e = pool[(round + k) % pool.size()] / Rational(k + 1);
    const std::string at = "graph " + std::to_string(round);

    auto u = smooth(g, e);
    const auto expected = smoothed_criticals(s, e);
    out.require(u.smoothed->criticals() == expected, at + ": presented criticals differ from (S-e)u(S+e)");
    out.require(expected.size() == 2 * s.size(), at + ": collision-free eps produced coincident values");
    out.require(validate(*u.smoothed).ok(), at + ": smoothed graph invalid");
    const GraphRef minimal = reduced(u.smoothed);
    for (const Rational& a : minimal->criticals()) {
      out.require(std::binary_search(expected.begin(), expected.end(), a), at + ": minimal critical value outside");
    }
    // fibers agree with an independent window evaluation
    const Cosheaf f = reeb_cosheaf(*g);
    const RGraph& h = *u.smoothed;
    for (std::size_t i = 0; i < h.num_levels(); ++i) {
      out.require(window_count(f, s, h.level_value(i), e) == h.level(i).size(), at + ": level fiber");
    }
    for (std::size_t i = 0; i + 1 < h.num_levels(); ++i) {
      const Rational lo = h.level_value(i);
      const Rational step = (h.level_value(i + 1) - lo) / Rational(4);
      for (int k = 1; k <= 3; ++k) {
        out.require(window_count(f, s, lo + step * Rational(k), e) == h.slot(i).size(), at + ": slot fiber");
      }
    }
  }
  return out;
}

Outcome sweep_oracle() {
  Outcome out;
  std::mt19937_64 rng(202);
  const std::vector<Rational> pool = {q(1, 2), q(1), q(3, 2), q(1, 3), q(2), q(5, 4)};
  for (int round = 0; round < 200 && out.ok; ++round) {
    GraphRef g = small_graph(rng, 3 + round % 9, 2 + round % 12, 6, 40);
    const Rational e = pool[round % pool.size()];
    auto naive = smooth_naive(g, e);
    auto sweep = smooth_sweep(g, e);
    const std::string at = "graph " + std::to_string(round);
    RGraphMorphism phi = match_smoothings(sweep, naive);
    out.require(validate_morphism(phi).ok() && is_isomorphism(phi), at + ": no isomorphism");
    out.require(equal(compose(sweep.zeta, phi), naive.zeta), at + ": isomorphism does not commute with zeta");
  }
  return out;
}

Outcome dynamic_connectivity() {
  Outcome out;
  std::mt19937 rng(303);
  const int n = 50;
  for (ForestKind kind : {ForestKind::kNaive, ForestKind::kLinkCut}) {
    ConnectivityIndex h(kind);
    for (int i = 0; i < n; ++i) h.add_node();
    std::multimap<int, std::pair<NodeId, NodeId>> live;
    std::set<std::pair<NodeId, NodeId>> present;
    int now = 0;
    for (int op = 0; op < 10'000 && out.ok; ++op) {
      if (live.empty() || rng() % 3 != 0) {
        NodeId x = rng() % n;
        NodeId y = rng() % n;
        if (x > y) std::swap(x, y);
        if (x == y || present.count({x, y})) continue;
        const int until = now + 1 + static_cast<int>(rng() % 200);
        live.emplace(until, std::make_pair(x, y));
        present.insert({x, y});
        h.insert(x, y, until);
      } else {
        now = live.begin()->first;
        while (!live.empty() && live.begin()->first == now) {
          auto it = live.begin();
          h.erase(it->second.first, it->second.second);
          present.erase(it->second);
          live.erase(it);
        }
      }
      detail::DisjointSets ds(n);
      for (const auto& kv : live) ds.unite(kv.second.first, kv.second.second);
      std::map<NodeId, NodeId> root_of;
      for (NodeId x = 0; x < static_cast<NodeId>(n); ++x) {
        auto [it, fresh] = root_of.emplace(h.find(x), ds.find(x));
        out.require(it->second == ds.find(x), "find disagrees at op " + std::to_string(op));
      }
      std::set<std::size_t> roots;
      for (NodeId x = 0; x < static_cast<NodeId>(n); ++x) roots.insert(ds.find(x));
      out.require(root_of.size() == roots.size(), "component count at op " + std::to_string(op));

      // forest weight against Kruskal on the live edges, heaviest first
      Rational forest(0);
      Rational best(0);
      detail::DisjointSets kruskal(n);
      for (auto it = live.rbegin(); it != live.rend(); ++it) {
        const auto [x, y] = it->second;
        if (auto w = h.forest().edge_weight(x, y)) forest += *w;
        if (kruskal.unite(x, y)) best += Rational(it->first);
      }
      out.require(forest == best, "forest is not max-weight at op " + std::to_string(op));
    }
  }
  return out;
}

Cosheaf random_cosheaf(std::mt19937_64& rng) {
  Cosheaf f;
  const int n = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n; ++i) f.criticals.push_back(q(static_cast<std::int64_t>(2 * i + rng() % 2)));
  for (int i = 0; i < n; ++i) {
    std::vector<Element> set;
    const int m = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < m; ++k) set.push_back({"n" + std::to_string(i) + "." + std::to_string(k), {}});
    f.node_sets.push_back(set);
  }
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<Element> set;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    const int m = static_cast<int>(rng() % 4);
    for (int k = 0; k < m; ++k) {
      set.push_back({"s" + std::to_string(i) + "." + std::to_string(k), {}});
      left.push_back(rng() % f.node_sets[i].size());
      right.push_back(rng() % f.node_sets[i + 1].size());
    }
    f.edge_sets.push_back(set);
    f.left_maps.push_back(left);
    f.right_maps.push_back(right);
  }
  return f;
}

Outcome equivalence() {
  Outcome out;
  std::mt19937_64 rng(404);
  for (int round = 0; round < 200 && out.ok; ++round) {
    const std::string at = "instance " + std::to_string(round);
    GraphRef g = share(random_graph(rng, 3 + round % 8, 2 + round % 10, 6));
    const Cosheaf f = round % 2 == 0 ? reeb_cosheaf(*g) : random_cosheaf(rng);
    out.require(validate(f).ok(), at + ": cosheaf invalid");

    GraphRef back = share(display(reeb_cosheaf(*g)));
    auto w = is_isomorphic(back, g);
    out.require(w && validate_morphism(*w).ok() && is_isomorphism(*w), at + ": display(C(g)) not isomorphic to g");

    auto m = is_cosheaf_iso(reeb_cosheaf(display(f)), f);
    out.require(m && validate_cosheaf_morphism(*m).ok(), at + ": C(D(F)) not isomorphic to F");
  }
  return out;
}

Outcome semigroup() {
  Outcome out;
  std::mt19937_64 rng(505);
  for (int round = 0; round < 100 && out.ok; ++round) {
    GraphRef g = share(random_graph(rng, 3 + round % 7, 2 + round % 9, 8, 2));
    const Rational e1 = q(1 + static_cast<std::int64_t>(rng() % 4), 3);
    const Rational e2 = q(1 + static_cast<std::int64_t>(rng() % 4), 4);
    auto check = compose_smoothings(g, e1, e2);
    const std::string at = "graph " + std::to_string(round);
    out.require(is_isomorphism(check.witness), at + ": witness is not an isomorphism");
    out.require(check.coherent, at + ": " + check.diagnostic.value_or("zeta incoherent"));
  }
  return out;
}

Outcome stability() {
  Outcome out;
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> value(0, 12);
  std::uniform_int_distribution<int> nudge(-3, 3);
  for (int round = 0; round < 100 && out.ok; ++round) {
    const int n = 3 + round % 6;
    Domain x = random_domain(rng, n);
    std::vector<Rational> fv;
    std::vector<Rational> gv;
    for (int v = 0; v < n; ++v) {
      const int a = value(rng);
      fv.push_back(q(a, 2));
      gv.push_back(q(2 * a + nudge(rng), 4));
    }
    add_edges(x, rng, n + 2, {fv, gv});
    auto c = stability_certificate(x, fv, gv);
    const std::string at = "domain " + std::to_string(round);
    out.require(c.eps() == sup_distance(fv, gv), at + ": eps is not the sup-norm");
    out.require(verify_certificate(c).ok, at + ": certificate fails");
  }
  const Rational tol = q(1, 16);
  for (int round = 0; round < 20 && out.ok; ++round) {
    const int n = 2 + round % 3;
    Domain x = random_domain(rng, n);
    std::vector<Rational> fv;
    std::vector<Rational> gv;
    for (int v = 0; v < n; ++v) {
      const int a = value(rng) % 5;
      fv.push_back(q(a));
      gv.push_back(q(4 * a + nudge(rng), 4));
    }
    add_edges(x, rng, n, {fv, gv});
    auto b = distance_bracket(share(realize(x, fv)), share(realize(x, gv)), tol);
    const std::string at = "tiny instance " + std::to_string(round);
    out.require(!b.infinite && !b.unknown_gaps, at + ": bracket incomplete");
    out.require(b.upper <= sup_distance(fv, gv) + tol, at + ": upper exceeds sup-norm + tol");
  }
  return out;
}

Outcome contraction() {
  Outcome out;
  std::mt19937_64 rng(707);
  int done = 0;
  for (int round = 0; done < 50 && out.ok; ++round) {
    std::optional<Certificate> c;
    if (round % 2 == 0) {
      Domain x = random_domain(rng, 3);
      std::vector<Rational> fv;
      std::vector<Rational> gv;
      for (int v = 0; v < 3; ++v) {
        const auto a = static_cast<std::int64_t>(rng() % 4);
        fv.push_back(q(a));
        gv.push_back(q(2 * a + static_cast<std::int64_t>(rng() % 3) - 1, 2));
      }
      add_edges(x, rng, 4, {fv, gv});
      c = stability_certificate(x, fv, gv);
    } else {
      GraphRef f = small_graph(rng, 3, 3, 3, 12);
      GraphRef g = small_graph(rng, 3, 3, 3, 12);
      auto r = search_certificate(f, g, q(1 + static_cast<std::int64_t>(rng() % 3), 2));
      if (r.status != SearchStatus::kFound) continue;
      c = r.certificate;
    }
    if (!verify_certificate(*c).ok) continue;
    const Rational delta = q(1 + static_cast<std::int64_t>(rng() % 3), 4);
    auto s = smooth_certificate(*c, delta);
    const std::string at = "pair " + std::to_string(done);
    out.require(s.eps() == c->eps(), at + ": eps changed");
    out.require(iso(s.setting->f, smooth(c->setting->f, delta).smoothed), at + ": wrong source");
    out.require(verify_certificate(s).ok, at + ": smoothed certificate fails");
    ++done;
  }
  return out;
}

Outcome quantified_iso() {
  Outcome out;
  std::mt19937_64 rng(808);
  for (int round = 0; round < 50 && out.ok; ++round) {
    GraphRef a = share(random_graph(rng, 3 + round % 4, 3 + round % 4, 5));
    GraphRef b = round % 2 == 0 ? share(shuffled(*a, rng)) : share(random_graph(rng, 3 + round % 4, 3 + round % 4, 5));
    auto r = quantified_iso_check(a, b);
    const bool truth = iso(a, b);
    const std::string at = "pair " + std::to_string(round);
    out.require(r.status != SearchStatus::kUnknown, at + ": budget exhausted");
    out.require((r.status == SearchStatus::kFound) == truth, at + ": search disagrees with is_isomorphic");
    if (r.witness) out.require(is_isomorphism(*r.witness), at + ": witness is not an isomorphism");
  }
  int refuted = 0;
  for (int round = 0; refuted < 50 && out.ok; ++round) {
    GraphRef a = share(random_graph(rng, 3 + round % 4, 3 + round % 5, 5));
    GraphRef b = share(random_graph(rng, 3 + round % 4, 3 + round % 5, 5));
    if (num_components(*a) != num_components(*b) || iso(a, b)) continue;
    auto r = quantified_iso_check(a, b);
    out.require(r.status == SearchStatus::kExhausted, "non-isomorphic pair " + std::to_string(refuted) + " not refuted");
    ++refuted;
  }
  return out;
}

Outcome triangle() {
  Outcome out;
  std::mt19937_64 rng(909);
  for (int round = 0; round < 20 && out.ok; ++round) {
    const int n = 3 + round % 4;
    Domain x = random_domain(rng, n);
    std::vector<std::vector<Rational>> v(3);
    for (int p = 0; p < n; ++p) {
      const auto a = static_cast<std::int64_t>(rng() % 8);
      v[0].push_back(q(a));
      v[1].push_back(q(2 * a + static_cast<std::int64_t>(rng() % 3) - 1, 2));
      v[2].push_back(q(4 * a + static_cast<std::int64_t>(rng() % 5) - 2, 4));
    }
    add_edges(x, rng, n + 2, v);
    auto fg = stability_certificate(x, v[0], v[1]);
    auto gh = stability_certificate(x, v[1], v[2]);
    auto fh = compose_certificates(fg, gh);
    const std::string at = "triple " + std::to_string(round);
    out.require(fh.eps() == fg.eps() + gh.eps(), at + ": eps is not the sum");
    out.require(verify_certificate(fh).ok, at + ": composed certificate fails");
  }
  return out;
}

/// Zigzag path with m edges, each spanning at most a few levels.
GraphRef path_graph(std::size_t m, std::mt19937_64& rng) {
  GraphBuilder b;
  std::int64_t prev = -1;
  for (std::size_t i = 0; i <= m; ++i) {
    std::int64_t v = static_cast<std::int64_t>(i / 2) + static_cast<std::int64_t>(rng() % 4);
    if (v == prev) ++v;
    b.vertex("p" + std::to_string(i), q(v));
    if (i > 0) b.edge("q" + std::to_string(i), "p" + std::to_string(i - 1), "p" + std::to_string(i));
    prev = v;
  }
  return share(b.build());
}

Outcome complexity() {
  Outcome out;
  std::mt19937_64 rng(1111);
  std::vector<double> times;
  std::ostringstream log;
  for (std::size_t m : {10'000u, 20'000u, 40'000u}) {
    GraphRef g = path_graph(m, rng);
    std::vector<double> runs;
    for (int r = 0; r < 3; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      auto u = smooth_sweep(g, q(3, 2), {ForestKind::kLinkCut, false});
      runs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      out.require(u.smoothed->num_vertices() > 0, "empty smoothing");
    }
    std::sort(runs.begin(), runs.end());
    times.push_back(runs[1]);
    log << " m=" << m << ":" << runs[1] << "s";
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    out.require(times[i] / times[i - 1] <= 2.5, "time ratio above 2.5:" + log.str());
  }
  if (out.ok) out.detail = log.str();
  return out;
}

Outcome gluing() {
  Outcome out;
  std::mt19937_64 rng(1212);
  auto bound = [&]() -> std::optional<Rational> {
    if (rng() % 8 == 0) return std::nullopt;
    return q(static_cast<std::int64_t>(rng() % 33) - 4, 4);
  };
  int done = 0;
  for (int round = 0; done < 500 && out.ok; ++round) {
    const Cosheaf f = reeb_cosheaf(random_graph(rng, 3 + round % 8, 2 + round % 10, 6));
    Interval i{bound(), bound(), false};
    Interval j{bound(), bound(), false};
    if ((i.lo && i.hi && !(*i.lo < *i.hi)) || (j.lo && j.hi && !(*j.lo < *j.hi))) continue;
    if (intersect(i, j).empty) continue;
    auto g = check_gluing(f, i, j);
    out.require(g.holds, "cover " + i.str() + " " + j.str() + " of instance " + std::to_string(done));
    out.require(g.union_components == evaluate(f, hull(i, j)).components.size(), "union count");
    ++done;
  }
  return out;
}

struct Criterion {
  const char* name;
  double limit;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"figure reproduction", 1, figures},
      {"critical-set law (300 graphs)", 10, critical_set_law},
      {"sweep/naive oracle equivalence (200 graphs)", 60, sweep_oracle},
      {"dynamic connectivity oracle (10^4 ops)", 30, dynamic_connectivity},
      {"equivalence of categories (200 instances)", 30, equivalence},
      {"semigroup and zeta coherence (100 triples)", 60, semigroup},
      {"stability (100 domains, 20 brackets)", 120, stability},
      {"contraction (50 pairs)", 60, contraction},
      {"quantified zero distance (50 + 50 pairs)", 300, quantified_iso},
      {"triangle inequality (20 triples)", 120, triangle},
      {"sweep scaling on path graphs", 120, complexity},
      {"gluing condition (500 covers)", 30, gluing},
  };
  int failed = 0;
  int number = 0;
  for (const Criterion& c : criteria) {
    ++number;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit) {
      o.ok = false;
      o.detail = "over the time limit";
    }
    std::printf("%s %2d %s [%.2f s / %.0f s]%s%s\n", o.ok ? "PASS" : "FAIL", number, c.name, secs, c.limit,
                o.detail.empty() ? "" : " ", o.detail.c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
