#include "reebcat/dynconn.hpp"

#include <algorithm>
#include <string>

namespace reebcat {

namespace {

constexpr NodeId kNone = static_cast<NodeId>(-1);

}  // namespace

// ---------------------------------------------------------------------------
// NaiveForest

void NaiveForest::check(NodeId x) const {
  if (!contains(x)) throw ForestError("unknown forest node " + std::to_string(x));
}

NodeId NaiveForest::add_node() {
  NodeId x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    alive_[x] = true;
  } else {
    x = parent_.size();
    parent_.push_back(kNone);
    weight_.emplace_back();
    degree_.push_back(0);
    alive_.push_back(true);
  }
  parent_[x] = kNone;
  degree_[x] = 0;
  return x;
}

void NaiveForest::remove_node(NodeId x) {
  check(x);
  if (degree_[x] != 0) throw ForestError("cannot remove a node with forest edges");
  alive_[x] = false;
  free_.push_back(x);
}

bool NaiveForest::contains(NodeId x) const { return x < alive_.size() && alive_[x]; }

std::optional<NodeId> NaiveForest::parent(NodeId x) {
  check(x);
  if (parent_[x] == kNone) return std::nullopt;
  return parent_[x];
}

NodeId NaiveForest::root(NodeId x) {
  check(x);
  while (parent_[x] != kNone) x = parent_[x];
  return x;
}

void NaiveForest::evert(NodeId x) {
  check(x);
  NodeId prev = kNone;
  Rational prev_w;
  NodeId cur = x;
  while (cur != kNone) {
    NodeId next = parent_[cur];
    Rational w = weight_[cur];
    parent_[cur] = prev;
    weight_[cur] = prev_w;
    prev = cur;
    prev_w = w;
    cur = next;
  }
}

void NaiveForest::link(NodeId x1, NodeId x2, const Rational& w) {
  if (root(x1) == root(x2)) throw ForestError("link within one tree");
  evert(x1);
  parent_[x1] = x2;
  weight_[x1] = w;
  ++degree_[x1];
  ++degree_[x2];
}

void NaiveForest::cut(NodeId x1, NodeId x2) {
  check(x1);
  check(x2);
  if (parent_[x1] == x2) {
    parent_[x1] = kNone;
  } else if (parent_[x2] == x1) {
    parent_[x2] = kNone;
  } else {
    throw ForestError("cut of a non-edge");
  }
  --degree_[x1];
  --degree_[x2];
}

std::optional<PathMin> NaiveForest::min_weight(NodeId x) {
  check(x);
  std::optional<PathMin> best;
  for (NodeId c = x; parent_[c] != kNone; c = parent_[c]) {
    if (!best || weight_[c] < best->weight) best = PathMin{c, weight_[c]};
  }
  return best;
}

bool NaiveForest::has_edge(NodeId x1, NodeId x2) {
  check(x1);
  check(x2);
  return parent_[x1] == x2 || parent_[x2] == x1;
}

std::optional<Rational> NaiveForest::edge_weight(NodeId x1, NodeId x2) {
  check(x1);
  check(x2);
  if (parent_[x1] == x2) return weight_[x1];
  if (parent_[x2] == x1) return weight_[x2];
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LinkCutForest

void LinkCutForest::check(NodeId x) const {
  if (!contains(x)) throw ForestError("unknown forest node " + std::to_string(x));
}

std::uint64_t LinkCutForest::key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::uint32_t LinkCutForest::alloc(bool is_edge, const Rational& w) {
  std::uint32_t x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
  } else {
    x = static_cast<std::uint32_t>(t_.size());
    t_.emplace_back();
    alive_.push_back(false);
    degree_.push_back(0);
  }
  t_[x] = Splay{};
  t_[x].is_edge = is_edge;
  t_[x].weight = w;
  pull(x);
  alive_[x] = !is_edge;
  degree_[x] = 0;
  return x;
}

NodeId LinkCutForest::add_node() { return alloc(false, Rational()); }

void LinkCutForest::remove_node(NodeId x) {
  check(x);
  if (degree_[x] != 0) throw ForestError("cannot remove a node with forest edges");
  alive_[x] = false;
  free_.push_back(static_cast<std::uint32_t>(x));
}

bool LinkCutForest::contains(NodeId x) const { return x < alive_.size() && alive_[x]; }

bool LinkCutForest::is_splay_root(std::uint32_t x) const {
  const std::uint32_t u = t_[x].up;
  return u == kNil || (t_[u].child[0] != x && t_[u].child[1] != x);
}

void LinkCutForest::push(std::uint32_t x) {
  Splay& n = t_[x];
  if (!n.flip) return;
  std::swap(n.child[0], n.child[1]);
  for (std::uint32_t c : n.child) {
    if (c != kNil) t_[c].flip = !t_[c].flip;
  }
  n.flip = false;
}

void LinkCutForest::pull(std::uint32_t x) {
  Splay& n = t_[x];
  n.best = n.is_edge ? x : kNil;
  for (std::uint32_t c : n.child) {
    if (c == kNil) continue;
    const std::uint32_t b = t_[c].best;
    if (b != kNil && (n.best == kNil || t_[b].weight < t_[n.best].weight)) n.best = b;
  }
}

void LinkCutForest::rotate(std::uint32_t x) {
  const std::uint32_t y = t_[x].up;
  const std::uint32_t z = t_[y].up;
  const int dir = t_[y].child[1] == x ? 1 : 0;
  if (!is_splay_root(y)) {
    if (t_[z].child[0] == y) {
      t_[z].child[0] = x;
    } else {
      t_[z].child[1] = x;
    }
  }
  t_[x].up = z;
  const std::uint32_t moved = t_[x].child[1 - dir];
  t_[y].child[dir] = moved;
  if (moved != kNil) t_[moved].up = y;
  t_[x].child[1 - dir] = y;
  t_[y].up = x;
  pull(y);
  pull(x);
}

void LinkCutForest::splay(std::uint32_t x) {
  std::vector<std::uint32_t>& stack = scratch_;
  stack.clear();
  for (std::uint32_t y = x;; y = t_[y].up) {
    stack.push_back(y);
    if (is_splay_root(y)) break;
  }
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) push(*it);
  while (!is_splay_root(x)) {
    const std::uint32_t y = t_[x].up;
    if (!is_splay_root(y)) {
      const std::uint32_t z = t_[y].up;
      const bool zig_zig = (t_[y].child[0] == x) == (t_[z].child[0] == y);
      rotate(zig_zig ? y : x);
    }
    rotate(x);
  }
}

void LinkCutForest::access(std::uint32_t x) {
  std::uint32_t last = kNil;
  for (std::uint32_t y = x; y != kNil; y = t_[y].up) {
    splay(y);
    t_[y].child[1] = last;
    pull(y);
    last = y;
  }
  splay(x);
}

void LinkCutForest::make_root(std::uint32_t x) {
  access(x);
  t_[x].flip = !t_[x].flip;
  push(x);
}

std::uint32_t LinkCutForest::path_parent(std::uint32_t x) {
  access(x);
  std::uint32_t p = t_[x].child[0];
  if (p == kNil) return kNil;
  push(p);
  while (t_[p].child[1] != kNil) {
    p = t_[p].child[1];
    push(p);
  }
  splay(p);
  return p;
}

void LinkCutForest::detach_from_parent(std::uint32_t x) {
  access(x);
  const std::uint32_t l = t_[x].child[0];
  if (l == kNil) return;
  t_[l].up = kNil;
  t_[x].child[0] = kNil;
  pull(x);
}

std::optional<NodeId> LinkCutForest::parent(NodeId x) {
  check(x);
  const std::uint32_t e = path_parent(static_cast<std::uint32_t>(x));
  if (e == kNil) return std::nullopt;
  return path_parent(e);
}

NodeId LinkCutForest::root(NodeId x) {
  check(x);
  std::uint32_t r = static_cast<std::uint32_t>(x);
  access(r);
  for (;;) {
    push(r);
    if (t_[r].child[0] == kNil) break;
    r = t_[r].child[0];
  }
  splay(r);
  return r;
}

void LinkCutForest::evert(NodeId x) {
  check(x);
  make_root(static_cast<std::uint32_t>(x));
}

void LinkCutForest::link(NodeId x1, NodeId x2, const Rational& w) {
  if (root(x1) == root(x2)) throw ForestError("link within one tree");
  const std::uint32_t e = alloc(true, w);
  const auto a = static_cast<std::uint32_t>(x1);
  make_root(a);
  t_[a].up = e;
  t_[e].up = static_cast<std::uint32_t>(x2);
  edges_[key(x1, x2)] = e;
  ++degree_[x1];
  ++degree_[x2];
}

void LinkCutForest::cut(NodeId x1, NodeId x2) {
  check(x1);
  check(x2);
  auto it = edges_.find(key(x1, x2));
  if (it == edges_.end()) throw ForestError("cut of a non-edge");
  const std::uint32_t e = it->second;
  const auto a = static_cast<std::uint32_t>(x1);
  const auto b = static_cast<std::uint32_t>(x2);
  const std::uint32_t child = path_parent(a) == e ? a : b;
  detach_from_parent(child);
  detach_from_parent(e);
  edges_.erase(it);
  free_.push_back(e);
  --degree_[x1];
  --degree_[x2];
}

std::optional<PathMin> LinkCutForest::min_weight(NodeId x) {
  check(x);
  access(static_cast<std::uint32_t>(x));
  const std::uint32_t b = t_[x].best;
  if (b == kNil) return std::nullopt;
  splay(b);
  push(b);
  std::uint32_t s = t_[b].child[1];
  push(s);
  while (t_[s].child[0] != kNil) {
    s = t_[s].child[0];
    push(s);
  }
  splay(s);
  return PathMin{s, t_[b].weight};
}

bool LinkCutForest::has_edge(NodeId x1, NodeId x2) {
  check(x1);
  check(x2);
  return edges_.contains(key(x1, x2));
}

std::optional<Rational> LinkCutForest::edge_weight(NodeId x1, NodeId x2) {
  check(x1);
  check(x2);
  auto it = edges_.find(key(x1, x2));
  if (it == edges_.end()) return std::nullopt;
  return t_[it->second].weight;
}

// ---------------------------------------------------------------------------

std::unique_ptr<DynamicForest> make_forest(ForestKind kind) {
  if (kind == ForestKind::kNaive) return std::make_unique<NaiveForest>();
  return std::make_unique<LinkCutForest>();
}

ConnectivityIndex::ConnectivityIndex(ForestKind kind) : forest_(make_forest(kind)) {}

bool ConnectivityIndex::insert(NodeId x1, NodeId x2, const Rational& w) {
  DynamicForest& f = *forest_;
  if (f.root(x1) != f.root(x2)) {
    f.link(x1, x2, w);
    return true;
  }
  f.evert(x1);
  const auto lightest = f.min_weight(x2);
  if (!lightest || !(lightest->weight < w)) return false;
  f.cut(lightest->node, *f.parent(lightest->node));
  f.link(x1, x2, w);
  return true;
}

void ConnectivityIndex::erase(NodeId x1, NodeId x2) {
  if (forest_->has_edge(x1, x2)) forest_->cut(x1, x2);
}

}  // namespace reebcat
