#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "reebcat/detail/util.hpp"
#include "reebcat/dynconn.hpp"

using namespace reebcat;

namespace {

const ForestKind kKinds[] = {ForestKind::kNaive, ForestKind::kLinkCut};

}  // namespace

TEST_CASE("forest primitives") {
  for (ForestKind kind : kKinds) {
    auto f = make_forest(kind);
    NodeId a = f->add_node();
    NodeId b = f->add_node();
    NodeId c = f->add_node();
    CHECK(f->root(a) != f->root(b));
    f->link(a, b, 3);
    CHECK(f->root(a) == f->root(b));
    f->link(b, c, 7);
    CHECK_THROWS_AS(f->link(a, c, 1), ForestError);
    f->evert(a);
    CHECK_FALSE(f->parent(a).has_value());
    CHECK(f->root(c) == a);
    CHECK(f->parent(c) == b);
    auto m = f->min_weight(c);
    REQUIRE(m.has_value());
    CHECK(m->node == b);
    CHECK(m->weight == Rational(3));
    CHECK_FALSE(f->min_weight(a).has_value());
    CHECK(f->edge_weight(c, b) == Rational(7));
    f->cut(b, a);
    CHECK(f->root(a) != f->root(c));
    CHECK_THROWS_AS(f->cut(a, c), ForestError);
    CHECK_THROWS_AS(f->remove_node(b), ForestError);
  }
}

TEST_CASE("insert replacement rule") {
  for (ForestKind kind : kKinds) {
    ConnectivityIndex h(kind);
    NodeId a = h.add_node();
    NodeId b = h.add_node();
    NodeId c = h.add_node();
    CHECK(h.insert(a, b, 5));
    CHECK(h.insert(b, c, 3));
    CHECK(h.insert(a, c, 4));
    CHECK(h.forest().has_edge(a, b));
    CHECK(h.forest().has_edge(a, c));
    CHECK_FALSE(h.forest().has_edge(b, c));
    CHECK_FALSE(h.insert(b, c, 1));
    h.erase(b, c);
    CHECK(h.connected(b, c));
    h.erase(a, b);
    CHECK_FALSE(h.connected(a, b));
  }
}

TEST_CASE("random contract-respecting sequences agree with brute force") {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    ConnectivityIndex naive(ForestKind::kNaive);
    ConnectivityIndex lct(ForestKind::kLinkCut);
    const int n = 30;
    for (int i = 0; i < n; ++i) {
      naive.add_node();
      lct.add_node();
    }
    // pending edges keyed by deletion time
    std::multimap<int, std::pair<NodeId, NodeId>> live;
    int now = 0;
    for (int step = 0; step < 300; ++step) {
      if (live.empty() || rng() % 3 != 0) {
        NodeId x = rng() % n;
        NodeId y = rng() % n;
        if (x == y) continue;
        bool dup = std::any_of(live.begin(), live.end(), [&](const auto& kv) {
          return (kv.second.first == x && kv.second.second == y) || (kv.second.first == y && kv.second.second == x);
        });
        if (dup) continue;
        int until = now + 1 + static_cast<int>(rng() % 40);
        live.emplace(until, std::make_pair(x, y));
        naive.insert(x, y, until);
        lct.insert(x, y, until);
      } else {
        now = live.begin()->first;
        while (!live.empty() && live.begin()->first == now) {
          auto it = live.begin();
          naive.erase(it->second.first, it->second.second);
          lct.erase(it->second.first, it->second.second);
          live.erase(it);
        }
      }
      detail::DisjointSets ds(n);
      for (const auto& kv : live) ds.unite(kv.second.first, kv.second.second);
      for (NodeId x = 0; x < static_cast<NodeId>(n); ++x) {
        for (NodeId y = x + 1; y < static_cast<NodeId>(n); ++y) {
          const bool truth = ds.find(x) == ds.find(y);
          REQUIRE(naive.connected(x, y) == truth);
          REQUIRE(lct.connected(x, y) == truth);
        }
      }
    }
  }
}
