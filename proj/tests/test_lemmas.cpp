#include <gtest/gtest.h>

#include "veech/lemmas.hpp"

using namespace veech;

namespace {

LemmaConfig small(std::size_t samples, unsigned threads = 1) {
  LemmaConfig c;
  c.seed = 11;
  c.samples = samples;
  c.n_max = 8;
  c.bound = 300;
  c.threads = threads;
  return c;
}

}  // namespace

TEST(Lemmas, NoViolationsOnSmallRuns) {
  for (auto* S : {&SurfaceProto::get(8, 0), &SurfaceProto::get(5, -1), &SurfaceProto::get(17, 1),
                  &SurfaceProto::get(12, 0), &SurfaceProto::get(13, -1)}) {
    for (Lemma l : all_lemmas()) {
      const LemmaReport r = check_lemma(*S, l, small(150));
      EXPECT_EQ(r.violations, 0u) << S->name() << " " << to_string(l) << ": "
                                  << (r.witnesses.empty() ? "" : r.witnesses.front());
      EXPECT_EQ(r.samples, 150u);
      EXPECT_GE(r.checks, r.samples);
    }
  }
}

TEST(Lemmas, DeterministicAcrossThreadCounts) {
  const auto& S = SurfaceProto::get(8, 0);
  for (Lemma l : all_lemmas()) {
    const LemmaReport a = check_lemma(S, l, small(200, 1));
    const LemmaReport b = check_lemma(S, l, small(200, 3));
    EXPECT_EQ(a.checks, b.checks);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.witnesses, b.witnesses);
  }
}

TEST(Lemmas, SmallExponentsBreakGrowth) {
  // Below the threshold the growth statement fails: a single B twist of an
  // A-periodic point often lowers s.
  const auto& S = SurfaceProto::get(8, 0);
  std::size_t drops = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng = make_rng(3, 0, i);
    SampleSpec spec;
    spec.N = detail::uniform(rng, 1, 8);
    spec.bound = 300;
    spec.cls = PointClass::a_periodic_only;
    const SurfacePoint P = sample_point(S, spec, rng);
    drops += !(s_value(P) < s_value(apply_B(P, 1))) || !(s_value(P) < s_value(apply_B(P, -1)));
  }
  EXPECT_GT(drops, 0u);
}

TEST(Lemmas, Names) {
  EXPECT_EQ(all_lemmas().size(), 5u);
  EXPECT_EQ(to_string(Lemma::three_of_four), "three_of_four");
}
