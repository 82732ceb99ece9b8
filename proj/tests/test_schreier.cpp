#include <gtest/gtest.h>

#include <random>

#include "veech/sampling.hpp"
#include "veech/schreier.hpp"

using namespace veech;

namespace {

const SurfaceProto& L8() { return SurfaceProto::get(8, 0); }

std::vector<Letter> unit_gens() { return {{Gen::A, 1}, {Gen::A, -1}, {Gen::B, 1}, {Gen::B, -1}}; }

SurfacePoint sample(std::uint64_t i, PointClass cls, std::int64_t nmax = 3, std::int64_t bound = 200) {
  Rng rng = make_rng(555, static_cast<std::uint64_t>(cls), i);
  SampleSpec spec;
  spec.N = detail::uniform(rng, 1, nmax);
  spec.bound = bound;
  spec.cls = cls;
  return sample_point(L8(), spec, rng);
}

// Brute force: min over all vertex subsets M containing v0 that induce a
// connected subgraph.
Rational brute_min_connected(const FiniteGraph& G, std::uint32_t root, std::size_t max_size) {
  const std::uint32_t n = static_cast<std::uint32_t>(G.size());
  Rational best(2);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!(mask >> root & 1u)) continue;
    std::vector<std::uint32_t> M;
    for (std::uint32_t v = 0; v < n; ++v)
      if (mask >> v & 1u) M.push_back(v);
    if (M.size() > max_size) continue;
    // connectivity inside M
    std::uint32_t seen = 1u << root, frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t v = 0; v < n; ++v)
        if (frontier >> v & 1u)
          for (auto u : G.neighbors(v))
            if ((mask >> u & 1u) && !(seen >> u & 1u)) next |= 1u << u;
      seen |= next;
      frontier = next;
    }
    if (seen != mask) continue;
    best = std::min(best, cheeger_of_set(G, M));
  }
  return best;
}

FiniteGraph random_graph(std::uint64_t seed, std::uint32_t n, double p) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<std::uint32_t> ext(0, 2);
  FiniteGraph G(n);
  for (std::uint32_t v = 1; v < n; ++v) G.add_edge(v, std::uniform_int_distribution<std::uint32_t>(0, v - 1)(rng));
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (edge(rng)) G.add_edge(u, v);
  for (std::uint32_t v = 0; v < n; ++v) G.set_external_degree(v, ext(rng));
  return G;
}

}  // namespace

TEST(Ball, RadiusZeroAndGrowthBound) {
  const SurfacePoint P = sample(0, PointClass::neither);
  const OrbitGraph G0 = expand_ball(P, unit_gens(), 0);
  EXPECT_EQ(G0.size(), 1u);
  EXPECT_TRUE(G0.edges.empty());
  EXPECT_EQ(G0.frontier(), std::vector<std::uint32_t>{0});
  for (std::uint64_t i = 0; i < 20; ++i) {
    const OrbitGraph G = expand_ball(sample(i, PointClass::any), unit_gens(), 2);
    EXPECT_LE(G.size(), 17u);
    for (std::uint32_t v = 0; v < G.size(); ++v) {
      EXPECT_LE(G.depth[v], 2);
      EXPECT_EQ(G.expanded[v], G.depth[v] < 2);
      if (G.expanded[v]) EXPECT_EQ(G.out_edges(v).size(), 4u);
    }
    for (const auto& e : G.edges) EXPECT_EQ(apply(G.vertices[e.from], e.label), G.vertices[e.to]);
  }
  EXPECT_THROW(expand_ball(P, unit_gens(), -1), domain_error);
  EXPECT_THROW(expand_ball(P, {}, 1), domain_error);
}

TEST(Ball, LoopAtPeriodicPoint) {
  // B^1 fixes (x, 1/2) only if the twist is a full turn; B^l with l a multiple
  // of the period is a loop.
  const SurfacePoint P = SurfacePoint::make(L8(), Rational(1, 3), 0, Rational(1, 2), 0);
  ASSERT_TRUE(is_B_periodic(P));
  const OrbitGraph G = expand_ball(P, {{Gen::B, 6}, {Gen::A, 1}}, 1);
  bool loop = false;
  for (const auto& e : G.edges) loop = loop || (e.from == e.to && e.label.gen == Gen::B);
  EXPECT_TRUE(loop);
  const FiniteGraph simple = G.simple_view();
  EXPECT_EQ(simple.neighbors(G.root).size(), 1u);
}

TEST(Ball, VertexCapTruncates) {
  ExpandOptions opt;
  opt.vertex_cap = 10;
  const OrbitGraph G = expand_ball(sample(3, PointClass::neither), unit_gens(), 4, opt);
  EXPECT_TRUE(G.truncated);
  EXPECT_LE(G.size(), 10u);
}

TEST(Ball, ThreadCountDoesNotChangeTheBall) {
  const SurfacePoint P = sample(9, PointClass::neither);
  ExpandOptions one, four;
  four.threads = 4;
  const OrbitGraph a = expand_ball(P, unit_gens(), 4, one), b = expand_ball(P, unit_gens(), 4, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t v = 0; v < a.size(); ++v) EXPECT_EQ(a.vertices[v], b.vertices[v]);
  ASSERT_EQ(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    EXPECT_EQ(a.edges[i].from, b.edges[i].from);
    EXPECT_EQ(a.edges[i].to, b.edges[i].to);
  }
}

TEST(G2, GeneratorsAndExclusion) {
  const Thresholds t = thresholds(L8(), 1);
  const auto gens = g2_generators(t);
  ASSERT_EQ(gens.size(), 4u);
  EXPECT_EQ(gens[0].exp, 4);
  EXPECT_EQ(gens[1].exp, -4);
  EXPECT_EQ(gens[2].exp, 10);
  EXPECT_EQ(gens[3].exp, -10);
  EXPECT_TRUE(excluded_from_G2(SurfacePoint::make(L8(), Rational(1, 2), 0, Rational(1, 3), 0)));
  EXPECT_FALSE(excluded_from_G2(SurfacePoint::make(L8(), Rational(1, 2), 0, Rational(1, 3), Rational(1, 3))));
  // excluded points are isolated under the G'' generators
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng = make_rng(77, 0, i);
    SampleSpec spec;
    spec.N = detail::uniform(rng, 1, 6);
    spec.bound = 50;
    spec.cls = PointClass::a_periodic;
    const SurfacePoint P = sample_point(L8(), spec, rng);
    if (!excluded_from_G2(P)) continue;
    for (const auto& g : g2_generators(thresholds(L8(), spec.N))) EXPECT_EQ(apply(P, g), P);
  }
}

TEST(G2, BallsAreTreesWithRisingS) {
  std::size_t tree = 0, looped = 0;
  for (std::uint64_t i = 0; i < 24; ++i) {
    const PointClass cls = i % 3 == 0 ? PointClass::neither : i % 3 == 1 ? PointClass::a_periodic_only
                                                                          : PointClass::b_periodic_only;
    const SurfacePoint P = sample(i, cls);
    const G2Ball b = build_G2(P, 2);
    const ComponentShape shape = classify_component(b);
    EXPECT_NE(shape.kind, ShapeKind::Other) << to_string(P) << ": "
                                           << (shape.violations.empty() ? "" : shape.violations.front());
    tree += shape.kind == ShapeKind::Tree4;
    looped += shape.kind == ShapeKind::RootLooped4;
    // the root is a local s-minimum
    for (const auto* e : b.ball.out_edges(b.ball.root)) EXPECT_GE(b.s[e->to], b.s[b.ball.root]);
  }
  EXPECT_EQ(tree + looped, 24u);
}

TEST(G2, StartingOnExcludedPoint) {
  const SurfacePoint P = SurfacePoint::make(L8(), Rational(1, 2), 0, Rational(1, 3), 0);
  const G2Ball b = build_G2(P, 1);
  EXPECT_GE(b.shift_steps, 1u);
  EXPECT_FALSE(excluded_from_G2(b.ball.vertices[b.ball.root]));
}

TEST(Classify, NegativeControls) {
  // A 4-cycle of generic points: build an OrbitGraph by hand.
  const SurfacePoint P = sample(1, PointClass::neither);
  OrbitGraph G;
  G.generators = unit_gens();
  for (int i = 0; i < 4; ++i) {
    G.vertices.push_back(apply_A(P, i));
    G.depth.push_back(i == 0 ? 0 : 1);
    G.parent.push_back(i == 0 ? -1 : 0);
    G.expanded.push_back(true);
  }
  G.edges = {{0, 1, {Gen::A, 1}}, {1, 2, {Gen::A, 1}}, {2, 3, {Gen::A, 1}}, {3, 0, {Gen::A, 1}}};
  std::vector<Rational> s{0, 1, 2, 3};
  EXPECT_EQ(classify_component(G, s).kind, ShapeKind::Other);
  // falling s along a tree edge
  OrbitGraph T = expand_ball(P, unit_gens(), 1);
  std::vector<Rational> sT(T.size(), Rational(5));
  sT[T.root] = 10;
  const ComponentShape bad = classify_component(T, sT);
  EXPECT_EQ(bad.kind, ShapeKind::Other);
  EXPECT_FALSE(bad.violations.empty());
  EXPECT_THROW(classify_component(T, std::vector<Rational>{}), domain_error);
}

TEST(Cheeger, SmallExamples) {
  const FiniteGraph T4 = regular_tree(4, 1);
  EXPECT_EQ(cheeger_of_set(T4, {0, 1, 2, 3, 4}), Rational(4, 5));
  EXPECT_EQ(cheeger_of_set(T4, {0}), Rational(1));
  FiniteGraph K3(3);
  K3.add_edge(0, 1);
  K3.add_edge(1, 2);
  K3.add_edge(0, 2);
  EXPECT_EQ(cheeger_of_set(K3, {0, 1, 2}), Rational(0));
  EXPECT_EQ(cheeger_of_set(K3, {0, 1}), Rational(1));
  EXPECT_THROW(cheeger_of_set(K3, {}), domain_error);
  EXPECT_THROW(cheeger_of_set(K3, {7}), domain_error);
  const FiniteGraph R = root_looped_tree(4);
  EXPECT_EQ(min_cheeger_connected(R, 0, 9).minimum, Rational(2, 3));
}

TEST(Cheeger, TreeProfileMatchesExplicitBalls) {
  const auto profile = tree_cheeger_profile(2, 6);
  ASSERT_EQ(profile.size(), 6u);
  EXPECT_EQ(profile[0], Rational(4, 5));
  for (int n = 1; n <= 6; ++n) {
    const FiniteGraph T = regular_tree(4, n);
    std::vector<std::uint32_t> all(T.size());
    for (std::uint32_t v = 0; v < T.size(); ++v) all[v] = v;
    EXPECT_EQ(cheeger_of_set(T, all), profile[n - 1]) << n;
    if (n > 1) EXPECT_LT(profile[n - 1], profile[n - 2]);
    EXPECT_GT(profile[n - 1], Rational(2, 3));
  }
  const auto p3 = tree_cheeger_profile(3, 4);
  EXPECT_EQ(p3[0], Rational(6, 7));
  EXPECT_THROW(tree_cheeger_profile(0, 3), domain_error);
}

TEST(Cheeger, SubsetSearchAgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const FiniteGraph G = random_graph(seed, 9 + seed % 4, 0.15);
    for (std::size_t cap : {3u, 6u, 13u}) {
      const SubsetSearch s = min_cheeger_connected(G, 0, cap);
      EXPECT_EQ(s.minimum, brute_min_connected(G, 0, cap)) << seed << " cap " << cap;
      EXPECT_EQ(cheeger_of_set(G, s.witness), s.minimum);
      EXPECT_LE(s.witness.size(), cap);
    }
  }
}

TEST(Cheeger, SubsetCountsOnTrees) {
  // Connected subtrees of a path-free star K_{1,3} containing the centre: 2^3.
  FiniteGraph star(4);
  for (std::uint32_t v = 1; v < 4; ++v) star.add_edge(0, v);
  EXPECT_EQ(min_cheeger_connected(star, 0, 4).subsets, 8u);
  // Removing external edges can only lower a set's value.
  const FiniteGraph G = random_graph(99, 10, 0.2);
  FiniteGraph H = G;
  for (std::uint32_t v = 0; v < H.size(); ++v) H.set_external_degree(v, 0);
  EXPECT_LE(min_cheeger_connected(H, 0, 10).minimum, min_cheeger_connected(G, 0, 10).minimum);
}
