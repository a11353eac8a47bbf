#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reebcat/rational.hpp"

namespace reebcat {

using NodeId = std::size_t;

/// Raised on linking inside one tree, cutting a non-edge or touching an unknown node.
class ForestError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PathMin {
  NodeId node;  ///< child endpoint of the lightest edge
  Rational weight;
};

/// Rooted forest with weighted edges.
class DynamicForest {
 public:
  virtual ~DynamicForest() = default;

  virtual NodeId add_node() = 0;
  /// Releases a node with no incident forest edges; its id may be reused.
  virtual void remove_node(NodeId x) = 0;
  virtual bool contains(NodeId x) const = 0;

  virtual std::optional<NodeId> parent(NodeId x) = 0;
  virtual NodeId root(NodeId x) = 0;
  /// Reroots the tree of x1 at x1 and hangs it below x2.
  virtual void link(NodeId x1, NodeId x2, const Rational& w) = 0;
  virtual void cut(NodeId x1, NodeId x2) = 0;
  /// Lightest edge on the path from x to its root; none if x is a root.
  virtual std::optional<PathMin> min_weight(NodeId x) = 0;
  virtual void evert(NodeId x) = 0;
  virtual bool has_edge(NodeId x1, NodeId x2) = 0;
  virtual std::optional<Rational> edge_weight(NodeId x1, NodeId x2) = 0;
};

/// Explicit parent pointers; every primitive walks the root path.
class NaiveForest final : public DynamicForest {
 public:
  NodeId add_node() override;
  void remove_node(NodeId x) override;
  bool contains(NodeId x) const override;
  std::optional<NodeId> parent(NodeId x) override;
  NodeId root(NodeId x) override;
  void link(NodeId x1, NodeId x2, const Rational& w) override;
  void cut(NodeId x1, NodeId x2) override;
  std::optional<PathMin> min_weight(NodeId x) override;
  void evert(NodeId x) override;
  bool has_edge(NodeId x1, NodeId x2) override;
  std::optional<Rational> edge_weight(NodeId x1, NodeId x2) override;

 private:
  void check(NodeId x) const;

  std::vector<NodeId> parent_;
  std::vector<Rational> weight_;  // weight of the edge to the parent
  std::vector<std::size_t> degree_;
  std::vector<bool> alive_;
  std::vector<NodeId> free_;
};

/// Link-cut tree. Each forest edge is an auxiliary splay node carrying its
/// weight, so path minima are subtree aggregates. O(log n) amortized.
/// Public node ids share the index space with the edge nodes.
class LinkCutForest final : public DynamicForest {
 public:
  NodeId add_node() override;
  void remove_node(NodeId x) override;
  bool contains(NodeId x) const override;
  std::optional<NodeId> parent(NodeId x) override;
  NodeId root(NodeId x) override;
  void link(NodeId x1, NodeId x2, const Rational& w) override;
  void cut(NodeId x1, NodeId x2) override;
  std::optional<PathMin> min_weight(NodeId x) override;
  void evert(NodeId x) override;
  bool has_edge(NodeId x1, NodeId x2) override;
  std::optional<Rational> edge_weight(NodeId x1, NodeId x2) override;

 private:
  static constexpr std::uint32_t kNil = UINT32_MAX;

  struct Splay {
    std::uint32_t child[2] = {kNil, kNil};
    std::uint32_t up = kNil;
    std::uint32_t best = kNil;  // lightest edge node in the splay subtree
    bool flip = false;
    bool is_edge = false;
    Rational weight;
  };

  std::uint32_t alloc(bool is_edge, const Rational& w);
  bool is_splay_root(std::uint32_t x) const;
  void push(std::uint32_t x);
  void pull(std::uint32_t x);
  void rotate(std::uint32_t x);
  void splay(std::uint32_t x);
  void access(std::uint32_t x);
  void make_root(std::uint32_t x);
  std::uint32_t path_parent(std::uint32_t x);
  void detach_from_parent(std::uint32_t x);
  void check(NodeId x) const;
  static std::uint64_t key(NodeId a, NodeId b);

  std::vector<Splay> t_;
  std::vector<bool> alive_;
  std::vector<std::size_t> degree_;
  std::vector<std::uint32_t> free_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
  std::vector<std::uint32_t> scratch_;
};

enum class ForestKind { kNaive, kLinkCut };

std::unique_ptr<DynamicForest> make_forest(ForestKind kind);

/// Connectivity under insertions and deletions whose weights are the
/// deletion times. Keeps a maximum-weight spanning forest: an edge closing
/// a cycle replaces the lightest edge on that cycle if it outlives it and
/// is discarded otherwise, so deletions never need a replacement search.
class ConnectivityIndex {
 public:
  explicit ConnectivityIndex(ForestKind kind = ForestKind::kLinkCut);

  NodeId add_node() { return forest_->add_node(); }
  void remove_node(NodeId x) { forest_->remove_node(x); }

  NodeId find(NodeId x) { return forest_->root(x); }
  bool connected(NodeId x, NodeId y) { return find(x) == find(y); }
  /// Returns whether the edge entered the forest.
  bool insert(NodeId x1, NodeId x2, const Rational& w);
  /// Removes the edge if it is a forest edge; otherwise does nothing.
  void erase(NodeId x1, NodeId x2);

  DynamicForest& forest() { return *forest_; }

 private:
  std::unique_ptr<DynamicForest> forest_;
};

}  // namespace reebcat
