#pragma once

// Reduction of connection points of L_8 into the finite box
// S = { |x_i|, |y_i| <= 35 + 24w }, with a word certifying each reduction,
// and the orbit-class bracket on S built from it.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "veech/error.hpp"
#include "veech/graph/union_find.hpp"
#include "veech/modn.hpp"
#include "veech/parallel.hpp"
#include "veech/quadfield.hpp"
#include "veech/surface.hpp"

namespace veech {

inline const SurfaceProto& l8() { return SurfaceProto::get(8, 0); }

inline void require_l8(const SurfacePoint& P) {
  if (&P.proto() != &l8()) throw domain_error("reduction is defined on L8 only, got " + P.proto().name());
}

inline QuadNum s_bound() {
  const SurfaceProto& S = l8();
  return S.make(35, 24);
}

inline bool in_S(const SurfacePoint& P) {
  require_l8(P);
  const QuadNum bound = s_bound();
  return compare(bound, abs(P.x().irrational_part())) >= 0 && compare(bound, abs(P.y().irrational_part())) >= 0;
}

struct ReduceStep {
  int which;  // 1: B-periodic, 2: A-periodic, 3: twist by A, 4: twist by B
  std::int64_t exponent;  // chosen power for cases 3/4, 0 for 1/2
};

struct ReduceResult {
  SurfacePoint input;
  GeneratorWord word;
  SurfacePoint output;
  std::size_t steps = 0;
  std::vector<ReduceStep> trace;
  std::vector<Rational> measure;  // max(|x_i|, |y_i|) before each step and at the end
};

inline Rational reduce_measure(const SurfacePoint& P) {
  return std::max(Rational(abs(P.x().irrational_part())), Rational(abs(P.y().irrational_part())));
}

namespace detail {

inline std::int64_t ceil_to_i64(const QuadNum& q) {
  const Integer c = ceil(q);
  if (!c.fits_slong_p()) throw resource_error("reduction exponent overflows 64 bits");
  return c.get_si();
}

}  // namespace detail

// Greedy reduction. Each iteration is one of:
//   1. P periodic under B       -> P <- A^-1 B^-1 A P
//   2. P periodic under A       -> P <- B^-1 A^-1 B P
//   3. |x_i| < |y_i|            -> P <- A^{+-k} P, k = ceil(1/(|x_i| w)) if x < 1 else 1,
//                                  sign minimising |y_i| (ties to +)
//   4. otherwise                -> P <- B^{+-l} P, l = ceil(1/(|y_i|(w-1))) if y < 1 else 1,
//                                  sign minimising |x_i| (ties to +)
// The measure max(|x_i|,|y_i|) must drop within every two iterations; a
// violation is a bug and raises internal_error.
inline ReduceResult reduce(const SurfacePoint& P, std::size_t max_steps = 1000000) {
  require_l8(P);
  const SurfaceProto& S = P.proto();
  const QuadNum w = S.w();
  ReduceResult res{P, {}, P, 0, {}, {}};
  SurfacePoint Q = P;
  res.measure.push_back(reduce_measure(Q));
  while (!in_S(Q)) {
    if (res.steps >= max_steps) throw resource_error("reduction exceeded " + std::to_string(max_steps) + " steps");
    GeneratorWord step;
    ReduceStep info{0, 0};
    const Rational ax = abs(Q.x().irrational_part());
    const Rational ay = abs(Q.y().irrational_part());
    if (is_B_periodic(Q)) {
      info.which = 1;
      step = {{Gen::A, 1}, {Gen::B, -1}, {Gen::A, -1}};
    } else if (is_A_periodic(Q)) {
      info.which = 2;
      step = {{Gen::B, 1}, {Gen::A, -1}, {Gen::B, -1}};
    } else if (ax < ay) {
      info.which = 3;
      // x_i != 0 here: x_i = 0 with x <= 1 would be A-periodic.
      const std::int64_t k = compare(Q.x(), Rational(1)) < 0 ? detail::ceil_to_i64((w * ax).inverse()) : 1;
      const SurfacePoint plus = apply_A(Q, k);
      const SurfacePoint minus = apply_A(Q, -k);
      info.exponent = abs(plus.y().irrational_part()) <= abs(minus.y().irrational_part()) ? k : -k;
      step = {{Gen::A, info.exponent}};
    } else {
      info.which = 4;
      const std::int64_t l =
          compare(Q.y(), Rational(1)) < 0 ? detail::ceil_to_i64(((w - Rational(1)) * ay).inverse()) : 1;
      const SurfacePoint plus = apply_B(Q, l);
      const SurfacePoint minus = apply_B(Q, -l);
      info.exponent = abs(plus.x().irrational_part()) <= abs(minus.x().irrational_part()) ? l : -l;
      step = {{Gen::B, info.exponent}};
    }
    Q = apply_word(Q, step);
    res.word.append(step);
    res.trace.push_back(info);
    ++res.steps;
    res.measure.push_back(reduce_measure(Q));
    const std::size_t t = res.measure.size() - 1;
    if (t >= 2 && !(res.measure[t - 1] < res.measure[t - 2]) && !(res.measure[t] < res.measure[t - 2]))
      throw internal_error("reduction measure did not drop within two steps at step " + std::to_string(t - 2) +
                           " from " + to_string(P));
  }
  res.output = Q;
  return res;
}

// Every point of S with least common denominator exactly N, in canonical form
// and a deterministic order.
inline std::vector<SurfacePoint> enumerate_S(std::int64_t N, std::size_t cap = 50000000) {
  if (N < 1) throw domain_error("enumerate_S needs N >= 1");
  const SurfaceProto& S = l8();
  const Rational n(static_cast<long>(N));
  const QuadNum bound = s_bound();
  const Integer top = floor(bound * n);
  if (!top.fits_slong_p()) throw resource_error("S too large");
  const long t = top.get_si();
  std::vector<SurfacePoint> out;
  auto numerators = [&](const Rational& irr, const QuadNum& hi) {
    const QuadNum iw = S.make(0, irr);
    return std::pair<long, long>{ceil(-iw * n).get_si(), ceil((hi - iw) * n).get_si() - 1};
  };
  for (long a = -t; a <= t; ++a) {
    const Rational xi = make_rational(Integer(a), Integer(static_cast<long>(N)));
    for (long b = -t; b <= t; ++b) {
      const Rational yi = make_rational(Integer(b), Integer(static_cast<long>(N)));
      const auto [ylo, yhi] = numerators(yi, S.height());
      for (long c = ylo; c <= yhi; ++c) {
        const QuadNum y = S.make(make_rational(Integer(c), Integer(static_cast<long>(N))), yi);
        const auto [xlo, xhi] = numerators(xi, compare(y, Rational(1)) < 0 ? S.width() : S.constant(1));
        for (long d = xlo; d <= xhi; ++d) {
          const QuadNum x = S.make(make_rational(Integer(d), Integer(static_cast<long>(N))), xi);
          if (noncanonical_reason(S, x, y)) continue;
          SurfacePoint P = SurfacePoint::make(S, x, y);
          if (n_value(P) != N) continue;
          if (out.size() >= cap) throw resource_error("S with N=" + std::to_string(N) + " exceeds the point cap");
          out.push_back(std::move(P));
        }
      }
    }
  }
  return out;
}

// A point is periodic when its orbit under the Veech group is finite. Only
// points periodic under both A and B qualify; for those, the orbit under
// A^{+-1}, B^{+-1} is explored up to `cap` points and counted periodic if it
// closes. The periodic points of L_8 are few, so a small cap suffices.
inline bool has_finite_orbit(const SurfacePoint& P, std::size_t cap = 6) {
  if (!is_A_periodic(P) || !is_B_periodic(P)) return false;
  std::set<SurfacePoint, PointLess> seen{P};
  std::deque<SurfacePoint> queue{P};
  while (!queue.empty()) {
    const SurfacePoint Q = queue.front();
    queue.pop_front();
    for (Gen g : {Gen::A, Gen::B})
      for (std::int64_t e : {1, -1}) {
        SurfacePoint R = apply(Q, g, e);
        if (seen.insert(R).second) {
          if (seen.size() > cap) return false;
          queue.push_back(std::move(R));
        }
      }
  }
  return true;
}

struct OrbitBracket {
  std::int64_t N = 1;
  std::size_t lower = 0;   // C(N)
  std::size_t upper = 0;   // components of H
  std::size_t points = 0;  // |S cap P_N|
  std::size_t periodic_points = 0;
  std::size_t nonperiodic_components = 0;
  std::vector<SurfacePoint> vertices;
  std::vector<std::uint32_t> component;  // H-component label per vertex, 0-based by first appearance
  std::vector<std::size_t> component_size;
  std::vector<bool> periodic;
};

// H has the points of S with denominator N as vertices and an edge from Q to
// the reduction of g Q for each g in {A, A^-1, B, B^-1}. Each H-component lies
// in one orbit, so #components(H) >= #orbits >= C(N).
inline OrbitBracket orbit_class_bracket(std::int64_t N, unsigned threads = 1) {
  OrbitBracket out;
  out.N = N;
  out.lower = ModNGraph(N).component_count();
  out.vertices = enumerate_S(N);
  const auto& V = out.vertices;
  out.points = V.size();
  std::unordered_map<SurfacePoint, std::uint32_t, PointHash> index;
  index.reserve(V.size() * 2);
  for (std::uint32_t i = 0; i < V.size(); ++i) index.emplace(V[i], i);

  std::vector<std::array<std::uint32_t, 4>> targets(V.size());
  out.periodic.assign(V.size(), false);
  std::vector<std::uint8_t> periodic(V.size(), 0);
  parallel_for(V.size(), threads, [&](std::size_t i) {
    int slot = 0;
    for (Gen g : {Gen::A, Gen::B})
      for (std::int64_t e : {1, -1}) {
        const SurfacePoint R = reduce(apply(V[i], g, e)).output;
        const auto it = index.find(R);
        if (it == index.end()) throw internal_error("reduction left S cap P_N at " + to_string(R));
        targets[i][slot++] = it->second;
      }
    periodic[i] = has_finite_orbit(V[i]) ? 1 : 0;
  });

  UnionFind uf(V.size());
  for (std::uint32_t i = 0; i < V.size(); ++i)
    for (auto j : targets[i]) uf.unite(i, j);
  std::unordered_map<std::uint32_t, std::uint32_t> label;
  out.component.resize(V.size());
  for (std::uint32_t i = 0; i < V.size(); ++i) {
    const auto root = uf.find(i);
    auto [it, fresh] = label.emplace(root, static_cast<std::uint32_t>(label.size()));
    if (fresh) out.component_size.push_back(0);
    out.component[i] = it->second;
    ++out.component_size[it->second];
    out.periodic[i] = periodic[i] != 0;
  }
  out.upper = out.component_size.size();
  std::set<std::uint32_t> nonperiodic;
  for (std::uint32_t i = 0; i < V.size(); ++i) {
    if (out.periodic[i]) ++out.periodic_points;
    else nonperiodic.insert(out.component[i]);
  }
  out.nonperiodic_components = nonperiodic.size();
  return out;
}

}  // namespace veech
