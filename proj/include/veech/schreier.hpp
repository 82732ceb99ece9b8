#pragma once

// Balls in the Schreier graph of the Veech group acting on an orbit, the
// pruned graph G'' (edges A^{+-k}, B^{+-l} only, points periodic under both
// generators removed), local shape classification, and Cheeger constants.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "veech/error.hpp"
#include "veech/graph/finite_graph.hpp"
#include "veech/graph/union_find.hpp"
#include "veech/parallel.hpp"
#include "veech/quadfield.hpp"
#include "veech/surface.hpp"

namespace veech {

struct OrbitEdge {
  std::uint32_t from;
  std::uint32_t to;
  Letter label;
};

struct OrbitGraph {
  std::vector<Letter> generators;
  std::vector<SurfacePoint> vertices;
  std::vector<int> depth;            // BFS distance from the root
  std::vector<std::int64_t> parent;  // BFS parent, -1 at the root
  std::vector<OrbitEdge> edges;      // one per (expanded vertex, generator), loops included
  std::vector<bool> expanded;        // false: on the frontier
  std::uint32_t root = 0;
  int radius = 0;
  bool truncated = false;  // the vertex cap stopped the expansion early

  std::size_t size() const { return vertices.size(); }

  std::vector<std::uint32_t> frontier() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < size(); ++v)
      if (!expanded[v]) out.push_back(v);
    return out;
  }

  // Outgoing edges of v in generator order (empty for frontier vertices).
  std::vector<const OrbitEdge*> out_edges(std::uint32_t v) const {
    std::vector<const OrbitEdge*> out;
    for (const auto& e : edges)
      if (e.from == v) out.push_back(&e);
    return out;
  }

  // The simple undirected view: loops and parallel edges collapsed. Frontier
  // vertices get external degree for the generators whose images are unknown
  // beyond what the ball already shows.
  FiniteGraph simple_view() const {
    FiniteGraph g(size());
    for (const auto& e : edges) g.add_edge(e.from, e.to);
    for (std::uint32_t v = 0; v < size(); ++v) {
      if (expanded[v]) continue;
      const auto seen = static_cast<std::uint32_t>(g.neighbors(v).size());
      const auto gens = static_cast<std::uint32_t>(generators.size());
      g.set_external_degree(v, gens > seen ? gens - seen : 0);
    }
    return g;
  }
};

struct ExpandOptions {
  std::size_t vertex_cap = 2000000;
  unsigned threads = 1;
};

// BFS ball of the given radius. Vertices are canonical points, so two words
// reaching the same point reach the same vertex. Layers are expanded in
// vertex order and generators in the given order; the result does not depend
// on the thread count. Hitting the cap returns the partial ball with
// truncated set.
inline OrbitGraph expand_ball(const SurfacePoint& P, const std::vector<Letter>& gens, int radius,
                              const ExpandOptions& opt = {}) {
  if (radius < 0) throw domain_error("radius must be >= 0");
  if (gens.empty()) throw domain_error("empty generator set");
  OrbitGraph G;
  G.generators = gens;
  G.radius = radius;
  G.vertices.push_back(P);
  G.depth.push_back(0);
  G.parent.push_back(-1);
  G.expanded.push_back(false);
  std::unordered_map<SurfacePoint, std::uint32_t, PointHash> index;
  index.emplace(P, 0);

  std::vector<std::uint32_t> layer{0};
  for (int d = 0; d < radius && !layer.empty() && !G.truncated; ++d) {
    std::vector<std::vector<SurfacePoint>> images(layer.size());
    parallel_for(layer.size(), opt.threads, [&](std::size_t i) {
      images[i].reserve(gens.size());
      for (const auto& g : gens) images[i].push_back(apply(G.vertices[layer[i]], g));
    });
    std::vector<std::uint32_t> next;
    for (std::size_t i = 0; i < layer.size() && !G.truncated; ++i) {
      const std::uint32_t u = layer[i];
      std::vector<OrbitEdge> pending;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        auto it = index.find(images[i][g]);
        if (it == index.end()) {
          if (G.vertices.size() >= opt.vertex_cap) {
            G.truncated = true;
            break;
          }
          const auto v = static_cast<std::uint32_t>(G.vertices.size());
          G.vertices.push_back(images[i][g]);
          G.depth.push_back(d + 1);
          G.parent.push_back(u);
          G.expanded.push_back(false);
          it = index.emplace(images[i][g], v).first;
          next.push_back(v);
        }
        pending.push_back({u, it->second, gens[g]});
      }
      if (G.truncated) break;
      G.edges.insert(G.edges.end(), pending.begin(), pending.end());
      G.expanded[u] = true;
    }
    layer = std::move(next);
  }
  return G;
}

// ---- G'' -------------------------------------------------------------------

inline bool excluded_from_G2(const SurfacePoint& P) { return is_A_periodic(P) && is_B_periodic(P); }

inline std::vector<Letter> g2_generators(const Thresholds& t) {
  return {{Gen::A, t.k}, {Gen::A, -t.k}, {Gen::B, t.l}, {Gen::B, -t.l}};
}

struct G2Ball {
  OrbitGraph ball;
  SurfacePoint start;      // the requested point
  Thresholds thresholds;
  std::size_t shift_steps = 0;    // A^{+-1}/B^{+-1} steps to leave the excluded set
  std::size_t descent_steps = 0;  // G'' steps down to the s-minimum
  std::vector<Rational> s;        // s-value per ball vertex
};

namespace detail {

// Nearest point (BFS over A^{+-1}, B^{+-1}) not periodic under both generators.
inline std::pair<SurfacePoint, std::size_t> leave_excluded(const SurfacePoint& P, std::size_t cap) {
  if (!excluded_from_G2(P)) return {P, 0};
  std::set<SurfacePoint, PointLess> seen{P};
  std::deque<std::pair<SurfacePoint, std::size_t>> q{{P, 0}};
  while (!q.empty()) {
    auto [Q, d] = q.front();
    q.pop_front();
    for (Gen g : {Gen::A, Gen::B})
      for (std::int64_t e : {1, -1}) {
        SurfacePoint R = apply(Q, g, e);
        if (!seen.insert(R).second) continue;
        if (!excluded_from_G2(R)) return {R, d + 1};
        if (seen.size() > cap) throw resource_error("no point outside the doubly periodic set near " + to_string(P));
        q.push_back({R, d + 1});
      }
  }
  // The orbit is finite and entirely doubly periodic: it has no G'' vertex.
  throw domain_error("orbit of " + to_string(P) + " is finite; it contributes no vertex to G''");
}

}  // namespace detail

// Ball of radius `radius` in G'' around the component's s-minimum. The start
// point is first moved off the doubly periodic set if needed, then walked
// down along the unique s-decreasing G'' edge until none is left.
inline G2Ball build_G2(const SurfacePoint& P, int radius, const ExpandOptions& opt = {}) {
  const Integer N = n_value(P);
  if (!N.fits_slong_p()) throw domain_error("denominator too large");
  G2Ball out{{}, P, thresholds(P.proto(), N.get_si()), 0, 0, {}};
  const auto gens = g2_generators(out.thresholds);

  auto [Q, shift] = detail::leave_excluded(P, 4096);
  out.shift_steps = shift;
  for (;;) {
    const Rational sq = s_value(Q);
    std::vector<SurfacePoint> lower;
    for (const auto& g : gens) {
      SurfacePoint R = apply(Q, g);
      if (!(R == Q) && s_value(R) < sq) lower.push_back(std::move(R));
    }
    if (lower.empty()) break;
    if (lower.size() > 1)
      throw internal_error("two s-decreasing G'' edges at " + to_string(Q) + " (start " + to_string(P) + ")");
    Q = lower.front();
    if (++out.descent_steps > 100000) throw resource_error("s-descent did not terminate");
  }
  out.ball = expand_ball(Q, gens, radius, opt);
  out.s.reserve(out.ball.size());
  for (const auto& v : out.ball.vertices) out.s.push_back(s_value(v));
  return out;
}

// ---- classification ----------------------------------------------------------

enum class ShapeKind { Tree4, RootLooped4, Other };

inline std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Tree4: return "Tree4";
    case ShapeKind::RootLooped4: return "RootLooped4";
    case ShapeKind::Other: return "Other";
  }
  return "?";
}

struct ComponentShape {
  ShapeKind kind = ShapeKind::Other;
  std::vector<std::string> violations;
  std::size_t vertices = 0;
  std::size_t loops_at_root = 0;
};

// Checks what the ball can show about the component:
//  - no cycle among the simple edges,
//  - every expanded non-root vertex has four distinct neighbours and no loop,
//  - the root has four distinct neighbours and no loop (Tree4), or loops from
//    exactly one generator, is periodic under it, and has two neighbours
//    (RootLooped4),
//  - s strictly increases from parent to child along the BFS tree.
inline ComponentShape classify_component(const OrbitGraph& G, const std::vector<Rational>& s) {
  ComponentShape out;
  out.vertices = G.size();
  auto fail = [&](std::string why) { out.violations.push_back(std::move(why)); };
  if (s.size() != G.size()) throw domain_error("s-values do not match the ball");
  if (G.truncated) fail("ball truncated by the vertex cap");

  std::vector<std::set<std::uint32_t>> nbrs(G.size());
  std::vector<std::set<Gen>> loop_gens(G.size());
  std::vector<std::size_t> loops(G.size(), 0);
  std::set<std::pair<std::uint32_t, std::uint32_t>> simple;
  for (const auto& e : G.edges) {
    if (e.from == e.to) {
      ++loops[e.from];
      loop_gens[e.from].insert(e.label.gen);
      continue;
    }
    nbrs[e.from].insert(e.to);
    nbrs[e.to].insert(e.from);
    simple.insert(std::minmax(e.from, e.to));
  }
  UnionFind uf(G.size());
  for (const auto& [u, v] : simple)
    if (!uf.unite(u, v)) fail("cycle through " + to_string(G.vertices[u]) + " and " + to_string(G.vertices[v]));

  for (std::uint32_t v = 0; v < G.size(); ++v) {
    if (v == G.root || !G.expanded[v]) continue;
    if (loops[v] != 0) fail("loop at non-root vertex " + to_string(G.vertices[v]));
    if (nbrs[v].size() != 4)
      fail("vertex " + to_string(G.vertices[v]) + " has " + std::to_string(nbrs[v].size()) + " neighbours");
  }
  for (std::uint32_t v = 0; v < G.size(); ++v) {
    if (G.parent[v] < 0) continue;
    const auto p = static_cast<std::uint32_t>(G.parent[v]);
    if (!(s[v] > s[p]))
      fail("s does not increase from " + to_string(G.vertices[p]) + " to " + to_string(G.vertices[v]));
  }

  ShapeKind kind = ShapeKind::Tree4;
  const std::uint32_t r = G.root;
  out.loops_at_root = loops[r];
  if (G.expanded[r]) {
    if (loops[r] == 0) {
      if (nbrs[r].size() != 4) fail("root has " + std::to_string(nbrs[r].size()) + " neighbours and no loop");
    } else {
      kind = ShapeKind::RootLooped4;
      if (loop_gens[r].size() != 1) fail("root has loops from both generators");
      else if (!is_periodic(G.vertices[r], *loop_gens[r].begin()))
        fail("loop at a root that is not periodic under the looping generator");
      if (nbrs[r].size() != 2) fail("looped root has " + std::to_string(nbrs[r].size()) + " neighbours");
    }
  }
  out.kind = out.violations.empty() ? kind : ShapeKind::Other;
  return out;
}

inline ComponentShape classify_component(const G2Ball& b) { return classify_component(b.ball, b.s); }

// ---- Cheeger constants ---------------------------------------------------------

// |boundary M| / |M|, the boundary being the vertices of M with a neighbour
// outside M (external edges count as outside).
inline Rational cheeger_of_set(const FiniteGraph& G, const std::vector<std::uint32_t>& M) {
  if (M.empty()) throw domain_error("Cheeger constant of an empty set");
  std::vector<char> in(G.size(), 0);
  for (auto v : M) {
    if (v >= G.size()) throw domain_error("vertex out of range");
    in[v] = 1;
  }
  std::size_t members = 0, boundary = 0;
  for (std::uint32_t v = 0; v < G.size(); ++v) {
    if (!in[v]) continue;
    ++members;
    bool edge = G.external_degree(v) > 0;
    for (auto u : G.neighbors(v)) edge = edge || !in[u];
    if (edge) ++boundary;
  }
  return make_rational(Integer(static_cast<unsigned long>(boundary)), Integer(static_cast<unsigned long>(members)));
}

// c(B_n), n = 1..n_max, for balls in the 2k-regular tree:
// |B_n| = 1 + 2k sum_{j<n} (2k-1)^j, |boundary B_n| = 2k (2k-1)^(n-1).
inline std::vector<Rational> tree_cheeger_profile(long k, int n_max) {
  if (k < 1 || n_max < 0) throw domain_error("tree_cheeger_profile needs k >= 1, n_max >= 0");
  std::vector<Rational> out;
  const Integer branch = 2 * k - 1;
  Integer layer = 2 * k;  // vertices at distance n
  Integer size = 1 + layer;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(make_rational(layer, size));
    layer *= branch;
    size += layer;
  }
  return out;
}

struct SubsetSearch {
  Rational minimum;
  std::vector<std::uint32_t> witness;
  std::size_t subsets = 0;
};

// Minimum of c(M) over connected M containing `root` with |M| <= max_size,
// by exhaustive enumeration (each connected set produced exactly once).
inline SubsetSearch min_cheeger_connected(const FiniteGraph& G, std::uint32_t root, std::size_t max_size) {
  if (root >= G.size() || max_size == 0) throw domain_error("bad subset search arguments");
  SubsetSearch best{Rational(2), {}, 0};
  std::vector<char> in(G.size(), 0), banned(G.size(), 0);
  std::vector<std::uint32_t> members{root};
  in[root] = 1;
  banned[root] = 1;

  // O(|M| deg) per visited set; |M| <= max_size keeps this cheap.
  auto score = [&]() {
    std::size_t b = 0;
    for (auto v : members) {
      bool edge = G.external_degree(v) > 0;
      for (auto u : G.neighbors(v)) edge = edge || !in[u];
      if (edge) ++b;
    }
    return make_rational(Integer(static_cast<unsigned long>(b)), Integer(static_cast<unsigned long>(members.size())));
  };

  std::function<void(std::vector<std::uint32_t>)> grow = [&](std::vector<std::uint32_t> candidates) {
    ++best.subsets;
    const Rational c = score();
    if (c < best.minimum) {
      best.minimum = c;
      best.witness = members;
    }
    if (members.size() == max_size) return;
    std::vector<std::uint32_t> newly_banned;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto v = candidates[i];
      std::vector<std::uint32_t> next(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end());
      std::vector<std::uint32_t> marked;
      for (auto u : G.neighbors(v))
        if (!banned[u]) {
          banned[u] = 1;
          marked.push_back(u);
          next.push_back(u);
        }
      in[v] = 1;
      members.push_back(v);
      grow(std::move(next));
      members.pop_back();
      in[v] = 0;
      for (auto u : marked) banned[u] = 0;
    }
  };

  std::vector<std::uint32_t> start;
  for (auto u : G.neighbors(root)) {
    banned[u] = 1;
    start.push_back(u);
  }
  grow(std::move(start));
  return best;
}

}  // namespace veech
