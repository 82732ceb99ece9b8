#pragma once

// Sampled property suites for the growth lemmas behind the tree structure of
// G''. Each suite draws its points and exponents from per-sample generators,
// so reports are identical for any thread count.
//
//   growth_B   A-periodic, not B-periodic P, |l| >= l0:  s(P) < s(B^l P)
//   growth_A   B-periodic, not A-periodic P, |k| >= k0:  s(P) < s(A^k P)
//   sign_A     P not A-periodic, k > k0:  Delta_A(P,k), Delta_A(P,-k) nonzero, opposite
//   sign_B     P not B-periodic, l > l0:  mirror
//   three_of_four  P periodic under neither, k > k1, l > l1: at least three of
//                  s(P) < s(A^k P), s(A^-k P), s(B^l P), s(B^-l P)

#include <cstdint>
#include <string>
#include <vector>

#include "veech/parallel.hpp"
#include "veech/quadfield.hpp"
#include "veech/sampling.hpp"
#include "veech/surface.hpp"

namespace veech {

enum class Lemma : std::uint8_t { growth_B, growth_A, sign_A, sign_B, three_of_four };

inline const std::vector<Lemma>& all_lemmas() {
  static const std::vector<Lemma> v{Lemma::growth_B, Lemma::growth_A, Lemma::sign_A, Lemma::sign_B,
                                    Lemma::three_of_four};
  return v;
}

inline std::string to_string(Lemma l) {
  switch (l) {
    case Lemma::growth_B: return "growth_B";
    case Lemma::growth_A: return "growth_A";
    case Lemma::sign_A: return "sign_A";
    case Lemma::sign_B: return "sign_B";
    case Lemma::three_of_four: return "three_of_four";
  }
  return "?";
}

struct LemmaConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  std::int64_t n_max = 12;        // N drawn uniformly from [1, n_max]
  std::int64_t bound = 1000;      // irrational-part numerators in [-bound, bound]
  std::int64_t exponent_span = 64;  // exponents drawn just above the threshold, within this span
  unsigned threads = 1;
};

struct LemmaReport {
  Lemma lemma;
  std::string surface;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;  // first few violations
};

namespace detail {

struct LemmaOutcome {
  std::size_t checks = 0;
  std::string violation;  // empty if none
};

// Smallest integer >= t (t >= 0) or > t when strict.
inline std::int64_t exponent_floor(const QuadNum& t, bool strict) {
  Integer c = strict ? floor(t) + 1 : ceil(t);
  if (!c.fits_slong_p()) throw resource_error("threshold too large");
  return std::max<std::int64_t>(1, c.get_si());
}

inline LemmaOutcome run_lemma_sample(const SurfaceProto& S, Lemma lemma, const LemmaConfig& cfg, std::size_t index) {
  Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(lemma) + 1, index);
  SampleSpec spec;
  spec.N = detail::uniform(rng, 1, cfg.n_max);
  spec.bound = cfg.bound;
  const bool alt = detail::uniform(rng, 0, 1) == 1;
  switch (lemma) {
    case Lemma::growth_B: spec.cls = PointClass::a_periodic_only; break;
    case Lemma::growth_A: spec.cls = PointClass::b_periodic_only; break;
    case Lemma::sign_A: spec.cls = alt ? PointClass::b_periodic_only : PointClass::neither; break;
    case Lemma::sign_B: spec.cls = alt ? PointClass::a_periodic_only : PointClass::neither; break;
    case Lemma::three_of_four: spec.cls = PointClass::neither; break;
  }
  const SurfacePoint P = sample_point(S, spec, rng);
  const Thresholds t = thresholds(S, spec.N);
  const Rational s0 = s_value(P);
  auto pick = [&](const QuadNum& thr, bool strict) {
    return exponent_floor(thr, strict) + detail::uniform(rng, 0, cfg.exponent_span);
  };
  auto where = [&](const std::string& what) { return what + " at P=" + to_string(P) + " on " + S.name(); };

  LemmaOutcome out;
  switch (lemma) {
    case Lemma::growth_B:
    case Lemma::growth_A: {
      const bool b = lemma == Lemma::growth_B;
      const std::int64_t e = pick(b ? t.l0 : t.k0, false);
      for (std::int64_t sgn_e : {1, -1}) {
        ++out.checks;
        const SurfacePoint Q = b ? apply_B(P, sgn_e * e) : apply_A(P, sgn_e * e);
        if (!(s0 < s_value(Q)))
          out.violation = where(std::string(b ? "B^" : "A^") + std::to_string(sgn_e * e) + " does not increase s");
      }
      break;
    }
    case Lemma::sign_A:
    case Lemma::sign_B: {
      const bool a = lemma == Lemma::sign_A;
      const std::int64_t e = pick(a ? t.k0 : t.l0, true);
      const Rational plus = a ? delta_A(P, e) : delta_B(P, e);
      const Rational minus = a ? delta_A(P, -e) : delta_B(P, -e);
      ++out.checks;
      if (sgn(plus) == 0 || sgn(plus) != -sgn(minus))
        out.violation = where(std::string(a ? "Delta_A" : "Delta_B") + "(+-" + std::to_string(e) + ") = " +
                              to_string(plus) + ", " + to_string(minus));
      break;
    }
    case Lemma::three_of_four: {
      const std::int64_t k = pick(t.k1, true);
      const std::int64_t l = pick(t.l1, true);
      int grow = 0;
      grow += s0 < s_value(apply_A(P, k));
      grow += s0 < s_value(apply_A(P, -k));
      grow += s0 < s_value(apply_B(P, l));
      grow += s0 < s_value(apply_B(P, -l));
      ++out.checks;
      if (grow < 3)
        out.violation = where("only " + std::to_string(grow) + " of 4 grow with k=" + std::to_string(k) +
                              ", l=" + std::to_string(l));
      break;
    }
  }
  return out;
}

}  // namespace detail

inline LemmaReport check_lemma(const SurfaceProto& S, Lemma lemma, const LemmaConfig& cfg) {
  std::vector<detail::LemmaOutcome> outcomes(cfg.samples);
  parallel_for(cfg.samples, cfg.threads,
               [&](std::size_t i) { outcomes[i] = detail::run_lemma_sample(S, lemma, cfg, i); });
  LemmaReport r{lemma, S.name(), cfg.samples, 0, 0, {}};
  for (const auto& o : outcomes) {
    r.checks += o.checks;
    if (!o.violation.empty()) {
      ++r.violations;
      if (r.witnesses.size() < 5) r.witnesses.push_back(o.violation);
    }
  }
  return r;
}

}  // namespace veech
