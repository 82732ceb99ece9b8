#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace veech {

// Disjoint sets over 0..n-1 with path halving and union by size. The smaller
// index wins ties so the surviving roots do not depend on merge order among
// equal-size sets; count() is order independent either way.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
  }

  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  std::size_t count() const noexcept { return sets_; }
  std::size_t size() const noexcept { return parent_.size(); }
  std::uint32_t set_size(std::uint32_t v) { return size_[find(v)]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t sets_;
};

}  // namespace veech
