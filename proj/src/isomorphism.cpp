#include "reebcat/isomorphism.hpp"

#include <algorithm>
#include <map>

namespace reebcat {

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

std::map<Pair, std::size_t> multiplicities(const RGraph& g) {
  std::map<Pair, std::size_t> out;
  for (const auto& e : g.edges()) ++out[{e.lower, e.upper}];
  return out;
}

std::vector<std::size_t> neighbours(const RGraph& g, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t e : g.up_edges(v)) out.push_back(g.edge(e).upper);
  for (std::size_t e : g.down_edges(v)) out.push_back(g.edge(e).lower);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Degree data that any isomorphism preserves.
std::vector<std::size_t> signature(const RGraph& g, const std::map<Pair, std::size_t>& mult, std::size_t v) {
  std::vector<std::size_t> up;
  std::vector<std::size_t> down;
  for (std::size_t u : neighbours(g, v)) {
    if (g.vertex(u).level > g.vertex(v).level) {
      up.push_back(mult.at({v, u}));
    } else {
      down.push_back(mult.at({u, v}));
    }
  }
  std::sort(up.begin(), up.end());
  std::sort(down.begin(), down.end());
  std::vector<std::size_t> sig{g.vertex(v).level, up.size(), down.size()};
  sig.insert(sig.end(), up.begin(), up.end());
  sig.push_back(kNoIndex);
  sig.insert(sig.end(), down.begin(), down.end());
  return sig;
}

class PresentationSearch {
 public:
  PresentationSearch(const RGraph& a, const RGraph& b, std::size_t budget)
      : a_(a), b_(b), budget_(budget), mult_a_(multiplicities(a)), mult_b_(multiplicities(b)) {}

  std::optional<PresentationIso> run() {
    const std::size_t n = a_.num_vertices();
    std::vector<std::vector<std::size_t>> sig_a(n);
    std::vector<std::vector<std::size_t>> sig_b(b_.num_vertices());
    for (std::size_t v = 0; v < n; ++v) sig_a[v] = signature(a_, mult_a_, v);
    for (std::size_t w = 0; w < b_.num_vertices(); ++w) sig_b[w] = signature(b_, mult_b_, w);
    candidates_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = 0; w < b_.num_vertices(); ++w) {
        if (sig_a[v] == sig_b[w]) candidates_[v].push_back(w);
      }
      if (candidates_[v].empty()) return std::nullopt;
    }
    nbr_a_.resize(n);
    nbr_b_.resize(b_.num_vertices());
    for (std::size_t v = 0; v < n; ++v) nbr_a_[v] = neighbours(a_, v);
    for (std::size_t w = 0; w < b_.num_vertices(); ++w) nbr_b_[w] = neighbours(b_, w);

    // Bottom-up by level, most constrained first within a level, preferring
    // vertices adjacent to ones already placed.
    order_.resize(n);
    for (std::size_t v = 0; v < n; ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      if (a_.vertex(x).level != a_.vertex(y).level) return a_.vertex(x).level < a_.vertex(y).level;
      return candidates_[x].size() < candidates_[y].size();
    });
    forward_.assign(n, kNoIndex);
    backward_.assign(b_.num_vertices(), kNoIndex);
    if (!assign(0)) return std::nullopt;

    PresentationIso iso;
    iso.vertex_map = forward_;
    std::map<Pair, std::vector<std::size_t>> parallel_b;
    for (std::size_t e = 0; e < b_.num_edges(); ++e) parallel_b[{b_.edge(e).lower, b_.edge(e).upper}].push_back(e);
    std::map<Pair, std::size_t> used;
    iso.edge_map.resize(a_.num_edges());
    for (std::size_t e = 0; e < a_.num_edges(); ++e) {
      Pair key{forward_[a_.edge(e).lower], forward_[a_.edge(e).upper]};
      iso.edge_map[e] = parallel_b.at(key)[used[key]++];
    }
    return iso;
  }

 private:
  std::size_t count(const std::map<Pair, std::size_t>& mult, const RGraph& g, std::size_t x, std::size_t y) const {
    if (g.vertex(x).level > g.vertex(y).level) std::swap(x, y);
    auto it = mult.find({x, y});
    return it == mult.end() ? 0 : it->second;
  }

  bool consistent(std::size_t v, std::size_t w) const {
    for (std::size_t u : nbr_a_[v]) {
      if (forward_[u] == kNoIndex) continue;
      if (count(mult_a_, a_, v, u) != count(mult_b_, b_, w, forward_[u])) return false;
    }
    for (std::size_t x : nbr_b_[w]) {
      if (backward_[x] == kNoIndex) continue;
      if (count(mult_b_, b_, w, x) != count(mult_a_, a_, v, backward_[x])) return false;
    }
    return true;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) return true;
    const std::size_t v = order_[depth];
    for (std::size_t w : candidates_[v]) {
      if (backward_[w] != kNoIndex) continue;
      if (++nodes_ > budget_) throw ResourceLimitError("isomorphism search exceeded its node budget");
      if (!consistent(v, w)) continue;
      forward_[v] = w;
      backward_[w] = v;
      if (assign(depth + 1)) return true;
      forward_[v] = kNoIndex;
      backward_[w] = kNoIndex;
    }
    return false;
  }

  const RGraph& a_;
  const RGraph& b_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::map<Pair, std::size_t> mult_a_;
  std::map<Pair, std::size_t> mult_b_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::vector<std::size_t>> nbr_a_;
  std::vector<std::vector<std::size_t>> nbr_b_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> forward_;
  std::vector<std::size_t> backward_;
};

}  // namespace

std::optional<PresentationIso> find_presentation_iso(const RGraph& a, const RGraph& b, std::size_t budget) {
  if (a.criticals() != b.criticals() || a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < a.num_levels(); ++i) {
    if (a.level(i).size() != b.level(i).size()) return std::nullopt;
  }
  for (std::size_t i = 0; i < a.num_slots(); ++i) {
    if (a.slot(i).size() != b.slot(i).size()) return std::nullopt;
  }
  return PresentationSearch(a, b, budget).run();
}

std::optional<IsoWitness> is_isomorphic(const GraphRef& g, const GraphRef& h, std::size_t budget) {
  const Subdivision rg = reduce(*g);
  const Subdivision rh = reduce(*h);
  auto iso = find_presentation_iso(rg.coarse, rh.coarse, budget);
  if (!iso) return std::nullopt;
  return from_point_map(g, h, [&](Cell c, const Rational& x) {
    const Cell coarse = to_coarse(rg, c);
    const Cell image = coarse.is_vertex() ? Cell::vertex(iso->vertex_map[coarse.index])
                                          : Cell::edge(iso->edge_map[coarse.index]);
    return to_fine(rh, image, x);
  });
}

}  // namespace reebcat
