#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

namespace reebcat::detail {

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Hands out identifiers that do not collide with ones already taken.
class IdPool {
 public:
  bool take(const std::string& id) { return taken_.insert(id).second; }
  bool contains(const std::string& id) const { return taken_.count(id) != 0; }

  std::string fresh(std::string base) {
    while (!taken_.insert(base).second) base.push_back('\'');
    return base;
  }

 private:
  std::unordered_set<std::string> taken_;
};

}  // namespace reebcat::detail
