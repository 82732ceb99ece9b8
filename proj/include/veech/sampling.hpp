#pragma once

// Seeded sampling of connection points. Irrational-part numerators are drawn
// uniformly from [-bound, bound] over the denominator N, the rational part
// uniformly from the exact range that keeps the coordinate inside its
// cylinder; points that are not canonical or whose least common denominator
// is not exactly N are rejected and redrawn.
//
// Every sample owns its generator, seeded from (seed, stream, index), so a
// batch is reproducible regardless of how it is split across threads.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "veech/error.hpp"
#include "veech/quadfield.hpp"
#include "veech/surface.hpp"

namespace veech {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

enum class PointClass {
  any,
  a_periodic_only,  // periodic under A, not under B
  b_periodic_only,
  neither,
  a_periodic,  // periodic under A, B unconstrained
  b_periodic,
};

inline std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::any: return "any";
    case PointClass::a_periodic_only: return "A-periodic only";
    case PointClass::b_periodic_only: return "B-periodic only";
    case PointClass::neither: return "periodic under neither";
    case PointClass::a_periodic: return "A-periodic";
    case PointClass::b_periodic: return "B-periodic";
  }
  return "?";
}

struct SampleSpec {
  std::int64_t N = 1;
  std::int64_t bound = 100;  // |numerator| of the irrational parts
  PointClass cls = PointClass::any;
  int max_tries = 100000;
};

namespace detail {

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw resource_error("sample range exceeds 64-bit integers");
  return z.get_si();
}

// Rational part c/N with 0 <= c/N + irr*w < hi, c uniform; nullopt if empty.
inline std::optional<QuadNum> coordinate_in(const SurfaceProto& S, const Rational& irr, const QuadNum& hi,
                                            std::int64_t N, Rng& rng) {
  const Rational n(static_cast<long>(N));
  const QuadNum iw = S.make(0, irr);
  const std::int64_t lo = to_i64(ceil(-iw * n));
  const std::int64_t top = to_i64(ceil((hi - iw) * n)) - 1;
  if (lo > top) return std::nullopt;
  const std::int64_t c = uniform(rng, lo, top);
  return S.make(make_rational(Integer(static_cast<long>(c)), Integer(static_cast<long>(N))), irr);
}

inline Rational irr_draw(std::int64_t N, std::int64_t bound, Rng& rng) {
  return make_rational(Integer(static_cast<long>(uniform(rng, -bound, bound))), Integer(static_cast<long>(N)));
}

// A point of rational splitting ratio in the vertical (A) or horizontal (B)
// direction, given as the periodic coordinate; nullopt if the draw is empty.
inline QuadNum periodic_coordinate(const SurfaceProto& S, Gen g, std::int64_t N, Rng& rng) {
  const QuadNum span = (g == Gen::A ? S.width() : S.height()) - Rational(1);
  // Left/lower cylinder: c/N with 0 <= c <= N. Right/upper: 1 + (c/N) span, 0 < c < N.
  const bool outer = N > 1 && uniform(rng, 0, 1) == 1;
  if (!outer)
    return S.constant(make_rational(Integer(static_cast<long>(uniform(rng, 0, N))), Integer(static_cast<long>(N))));
  const Rational t = make_rational(Integer(static_cast<long>(uniform(rng, 1, N - 1))), Integer(static_cast<long>(N)));
  return S.constant(1) + span * t;
}

inline bool matches(const SurfacePoint& P, PointClass cls) {
  switch (cls) {
    case PointClass::any: return true;
    case PointClass::a_periodic_only: return is_A_periodic(P) && !is_B_periodic(P);
    case PointClass::b_periodic_only: return is_B_periodic(P) && !is_A_periodic(P);
    case PointClass::neither: return !is_A_periodic(P) && !is_B_periodic(P);
    case PointClass::a_periodic: return is_A_periodic(P);
    case PointClass::b_periodic: return is_B_periodic(P);
  }
  return false;
}

}  // namespace detail

// One draw; nullopt when the candidate is rejected.
inline std::optional<SurfacePoint> try_sample_point(const SurfaceProto& S, const SampleSpec& spec, Rng& rng) {
  const std::int64_t N = spec.N;
  const bool want_a = spec.cls == PointClass::a_periodic_only || spec.cls == PointClass::a_periodic;
  const bool want_b = spec.cls == PointClass::b_periodic_only || spec.cls == PointClass::b_periodic;
  const QuadNum one = S.constant(1);

  std::optional<QuadNum> x, y;
  if (want_a) {
    x = detail::periodic_coordinate(S, Gen::A, N, rng);
    y = detail::coordinate_in(S, detail::irr_draw(N, spec.bound, rng), compare(*x, Rational(1)) < 0 ? S.height() : one,
                              N, rng);
  } else if (want_b) {
    y = detail::periodic_coordinate(S, Gen::B, N, rng);
    x = detail::coordinate_in(S, detail::irr_draw(N, spec.bound, rng), compare(*y, Rational(1)) < 0 ? S.width() : one,
                              N, rng);
  } else {
    y = detail::coordinate_in(S, detail::irr_draw(N, spec.bound, rng), S.height(), N, rng);
    if (y) {
      x = detail::coordinate_in(S, detail::irr_draw(N, spec.bound, rng),
                                compare(*y, Rational(1)) < 0 ? S.width() : one, N, rng);
    }
  }
  if (!x || !y) return std::nullopt;
  if (noncanonical_reason(S, *x, *y)) return std::nullopt;
  SurfacePoint P = SurfacePoint::make(S, *x, *y);
  if (n_value(P) != N) return std::nullopt;
  if (!detail::matches(P, spec.cls)) return std::nullopt;
  return P;
}

inline SurfacePoint sample_point(const SurfaceProto& S, const SampleSpec& spec, Rng& rng) {
  if (spec.N < 1 || spec.bound < 0) throw domain_error("sampling needs N >= 1 and bound >= 0");
  for (int t = 0; t < spec.max_tries; ++t)
    if (auto P = try_sample_point(S, spec, rng)) return *P;
  throw resource_error("no " + to_string(spec.cls) + " point with N=" + std::to_string(spec.N) + " found in " +
                       std::to_string(spec.max_tries) + " draws on " + S.name());
}

}  // namespace veech
