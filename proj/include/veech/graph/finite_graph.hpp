#pragma once

// Simple undirected graphs on 0..n-1, optionally a window of a larger graph:
// external_degree(v) counts edges from v to vertices outside the window.
// Such edges make v a boundary vertex of any set containing it and act as
// Dirichlet neighbours for the Laplacian.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "veech/error.hpp"

namespace veech {

class FiniteGraph {
 public:
  explicit FiniteGraph(std::size_t n = 0) : adj_(n), external_(n, 0) {}

  // Loops and repeated edges are dropped: the graph is simple.
  void add_edge(std::uint32_t u, std::uint32_t v) {
    check(u);
    check(v);
    if (u == v) return;
    auto& au = adj_[u];
    if (std::find(au.begin(), au.end(), v) != au.end()) return;
    au.push_back(v);
    adj_[v].push_back(u);
  }

  void set_external_degree(std::uint32_t v, std::uint32_t d) {
    check(v);
    external_[v] = d;
  }

  std::uint32_t add_vertex() {
    adj_.emplace_back();
    external_.push_back(0);
    return static_cast<std::uint32_t>(adj_.size() - 1);
  }

  std::size_t size() const noexcept { return adj_.size(); }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return adj_[v]; }
  std::uint32_t external_degree(std::uint32_t v) const { return external_[v]; }
  std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(adj_[v].size()) + external_[v]; }

  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adj_) s += a.size();
    return s / 2;
  }

  std::uint32_t max_valency() const {
    std::uint32_t k = 0;
    for (std::uint32_t v = 0; v < size(); ++v) k = std::max(k, degree(v));
    return k;
  }

  bool connected() const {
    if (adj_.empty()) return true;
    const auto dist = distances(0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
  }

  // BFS distance from src, -1 if unreachable.
  std::vector<int> distances(std::uint32_t src) const {
    check(src);
    std::vector<int> dist(size(), -1);
    std::deque<std::uint32_t> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop_front();
      for (auto v : adj_[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push_back(v);
        }
    }
    return dist;
  }

  std::vector<std::uint32_t> ball(std::uint32_t center, int radius) const {
    const auto dist = distances(center);
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < size(); ++v)
      if (dist[v] >= 0 && dist[v] <= radius) out.push_back(v);
    return out;
  }

 private:
  void check(std::uint32_t v) const {
    if (v >= adj_.size()) throw domain_error("vertex " + std::to_string(v) + " out of range");
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> external_;
};

// Ball of the given depth in the regular tree of valency `valency`, root 0;
// leaves carry valency-1 external edges.
inline FiniteGraph regular_tree(std::uint32_t valency, int depth) {
  if (valency < 1 || depth < 0) throw domain_error("regular_tree needs valency >= 1, depth >= 0");
  FiniteGraph g(1);
  std::vector<std::uint32_t> layer{0};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::uint32_t> next;
    for (auto v : layer) {
      const std::uint32_t kids = v == 0 ? valency : valency - 1;
      for (std::uint32_t c = 0; c < kids; ++c) {
        const auto u = g.add_vertex();
        g.add_edge(v, u);
        next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  for (auto v : layer) g.set_external_degree(v, depth == 0 ? valency : valency - 1);
  return g;
}

// The 4-valent tree whose root carries a loop: the root has two tree
// neighbours, every other vertex four. Truncated at `depth`, root 0. The loop
// does not appear: the graph is simple.
inline FiniteGraph root_looped_tree(int depth) {
  if (depth < 0) throw domain_error("root_looped_tree needs depth >= 0");
  FiniteGraph g(1);
  std::vector<std::uint32_t> layer{0};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::uint32_t> next;
    for (auto v : layer) {
      const std::uint32_t kids = v == 0 ? 2 : 3;
      for (std::uint32_t c = 0; c < kids; ++c) {
        const auto u = g.add_vertex();
        g.add_edge(v, u);
        next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  for (auto v : layer) g.set_external_degree(v, depth == 0 ? 2 : 3);
  return g;
}

}  // namespace veech
