#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "veech/modn.hpp"
#include "veech/sampling.hpp"

using namespace veech;

namespace {

// The L8 residue action written out by hand: A adds w*x to y, B adds (1+w)*y
// to x, with w^2 = 2.
std::array<std::int64_t, 4> oracle_act(std::array<std::int64_t, 4> v, Gen g, std::int64_t N) {
  auto [a, b, c, d] = v;
  if (g == Gen::A) {
    c += 2 * b;
    d += a;
  } else {
    a += c + 2 * d;
    b += c + d;
  }
  return {mod_floor(a, N), mod_floor(b, N), mod_floor(c, N), mod_floor(d, N)};
}

std::int64_t jordan4(std::int64_t N) {
  // N^4 * prod (1 - p^-4)
  std::int64_t out = N * N * N * N, n = N;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    out = out / (p * p * p * p) * (p * p * p * p - 1);
  }
  if (n > 1) out = out / (n * n * n * n) * (n * n * n * n - 1);
  return out;
}

// Components by plain BFS over residue vectors.
std::size_t bfs_components(std::int64_t N) {
  std::set<std::array<std::int64_t, 4>> seen;
  std::size_t comps = 0;
  for (std::int64_t a = 0; a < N; ++a)
    for (std::int64_t b = 0; b < N; ++b)
      for (std::int64_t c = 0; c < N; ++c)
        for (std::int64_t d = 0; d < N; ++d) {
          std::array<std::int64_t, 4> s{a, b, c, d};
          if (std::gcd(std::gcd(std::gcd(std::gcd(N, a), b), c), d) != 1 || seen.count(s)) continue;
          ++comps;
          std::queue<std::array<std::int64_t, 4>> q;
          q.push(s);
          seen.insert(s);
          while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (Gen g : {Gen::A, Gen::B}) {
              // forward and, by finiteness, backward edges are reached
              // through iterating forward; both directions are added anyway
              auto f = oracle_act(u, g, N);
              auto back = u;
              for (std::int64_t t = 1;; ++t) {
                auto nx = oracle_act(back, g, N);
                if (nx == u) break;
                back = nx;
              }
              for (auto nb : {f, back})
                if (seen.insert(nb).second) q.push(nb);
            }
          }
        }
  return comps;
}

}  // namespace

TEST(ModN, ActionExamples) {
  const ModNVec m = make_modn(2, 1, 0, 1, 1);
  EXPECT_EQ(act(m, Gen::A), make_modn(2, 1, 0, 1, 0));
  EXPECT_EQ(act(m, Gen::B), make_modn(2, 0, 0, 1, 1));
  EXPECT_THROW(make_modn(2, 0, 0, 0, 0), domain_error);
  EXPECT_THROW(make_modn(4, 2, 0, 2, 0), domain_error);
  EXPECT_THROW(make_modn(0, 1, 0, 0, 0), domain_error);
  EXPECT_EQ(make_modn(1, 0, 0, 0, 0).N, 1);
  EXPECT_EQ(make_modn(5, -1, 7, 0, 0), make_modn(5, 4, 2, 0, 0));
}

TEST(ModN, ActionMatchesHandOracle) {
  const ModNAction& L = ModNAction::l8();
  for (std::int64_t N = 1; N <= 9; ++N)
    for (std::int64_t idx = 0; idx < N * N * N * N; ++idx) {
      std::array<std::int64_t, 4> v{idx % N, idx / N % N, idx / N / N % N, idx / N / N / N};
      ModNVec m{N, v};
      for (Gen g : {Gen::A, Gen::B}) {
        EXPECT_EQ(L.act(m, g).v, oracle_act(v, g, N));
        EXPECT_EQ(L.act(L.act(m, g, 1), g, -1), m);
        EXPECT_EQ(L.act(m, g, 3), L.act(L.act(L.act(m, g), g), g));
      }
    }
}

TEST(ModN, VertexCountIsJordanTotient) {
  for (std::int64_t N = 1; N <= 16; ++N) {
    ModNGraph G(N);
    EXPECT_EQ(static_cast<std::int64_t>(G.vertex_count()), jordan4(N)) << "N=" << N;
    std::uint64_t total = 0;
    for (auto s : G.component_sizes()) total += s;
    EXPECT_EQ(total, G.vertex_count());
  }
}

TEST(ModN, ComponentCountsFirstFourteen) {
  const std::vector<std::size_t> expected{1, 5, 1, 8, 1, 5, 3, 8, 1, 5, 1, 8, 1, 15};
  for (std::int64_t N = 1; N <= 14; ++N) EXPECT_EQ(ModNGraph(N).component_count(), expected[N - 1]) << "N=" << N;
}

TEST(ModN, UnionFindAgreesWithBfs) {
  for (std::int64_t N = 1; N <= 8; ++N) EXPECT_EQ(ModNGraph(N).component_count(), bfs_components(N)) << "N=" << N;
}

TEST(ModN, RepresentativesAndLabelsConsistent) {
  for (std::int64_t N : {2, 4, 7, 8, 12}) {
    ModNGraph G(N);
    std::set<std::int32_t> labels;
    for (const auto& r : G.representatives()) labels.insert(G.component_of(r));
    EXPECT_EQ(labels.size(), G.component_count());
    for (std::uint64_t idx = 0; idx < G.raw_size(); ++idx) {
      if (!G.is_vertex(idx)) continue;
      const ModNVec m = G.decode(idx);
      EXPECT_EQ(G.encode(m), idx);
      for (Gen g : {Gen::A, Gen::B}) EXPECT_EQ(G.component_of(G.action().act(m, g)), G.component_of(m));
    }
  }
}

TEST(ModN, ResourceCap) {
  EXPECT_THROW(ModNGraph(100, ModNAction::l8(), 1000), resource_error);
  EXPECT_THROW(ModNGraph(0), domain_error);
}

TEST(ModN, Multiplicativity) {
  const auto rows = multiplicativity_report(14);
  EXPECT_EQ(rows.size(), 4u);  // 2x3, 2x5, 2x7, 3x4
  for (const auto& row : rows) EXPECT_TRUE(row.holds()) << row.n << "x" << row.m;
}

TEST(ModN, ProjectionExamples) {
  const auto& S = SurfaceProto::get(8, 0);
  const SurfacePoint P = SurfacePoint::make(S, Rational(1, 2), 0, Rational(1, 3), 0);
  const ModNVec m = project(P);
  EXPECT_EQ(m.N, 6);
  EXPECT_EQ(m.v, (std::array<std::int64_t, 4>{3, 0, 2, 0}));
  const SurfacePoint Q = SurfacePoint::make(S, 2, -1, 1, Rational(-1, 2));
  EXPECT_EQ(project(Q), make_modn(2, 0, 0, 0, 1));
}

TEST(ModN, ProjectionIsEquivariant) {
  const auto& S = SurfaceProto::get(8, 0);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    Rng rng = make_rng(7, 0, i);
    SampleSpec spec;
    spec.N = detail::uniform(rng, 1, 30);
    spec.bound = 500;
    const SurfacePoint P = sample_point(S, spec, rng);
    const ModNVec m = project(P);
    EXPECT_EQ(m.N, spec.N);
    for (Gen g : {Gen::A, Gen::B})
      for (int e : {1, -1, 5}) {
        const ModNVec img = ModNAction::l8().act(m, g, e);
        EXPECT_EQ(project(apply(P, g, e)), img) << to_string(P);
      }
  }
}

TEST(ModN, OtherPrototypesActEquivariantly) {
  for (auto* S : {&SurfaceProto::get(12, 0), &SurfaceProto::get(5, -1), &SurfaceProto::get(17, 1)}) {
    const ModNAction act(*S);
    for (std::uint64_t i = 0; i < 300; ++i) {
      Rng rng = make_rng(8, 0, i);
      SampleSpec spec;
      spec.N = detail::uniform(rng, 1, 12);
      spec.bound = 200;
      const SurfacePoint P = sample_point(*S, spec, rng);
      for (Gen g : {Gen::A, Gen::B}) EXPECT_EQ(project(apply(P, g, 1)), act.act(project(P), g)) << S->name();
    }
  }
}
