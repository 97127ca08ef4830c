// Copyright 2026 The mtlk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mtlk/transform.hpp"

#include <gtest/gtest.h>

#include "mtlk/error.hpp"
#include "mtlk/eval.hpp"
#include "mtlk/generate.hpp"

namespace mtlk {
namespace {

KNum k(const char* s) { return parse_knum(s); }

const char* kUnitP = "before {}\nat 0 {}\non (0,1) {P}\nat 1 {}\nafter {}\n";

std::vector<FiniteSignal> signals(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<FiniteSignal> out;
  for (int i = 0; i < n; ++i) out.push_back(random_signal(rng.next(), {}));
  return out;
}

bool fo_equiv(const Fo& a, const Fo& b, const std::vector<FiniteSignal>& sigs) {
  for (const auto& s : sigs) {
    if (fo_sat(a, s) != fo_sat(b, s)) {
      ADD_FAILURE() << fo_to_string(a) << "\nvs\n" << fo_to_string(b) << "\non\n"
                    << signal_to_text(s);
      return false;
    }
  }
  return true;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kSyntaxError;
}

TEST(Scale, Examples) {
  EXPECT_EQ(fo_to_string(scale_fo(parse_fo("P(x+1)"), k("1/2"))),
            fo_to_string(parse_fo("P(x+1/2)")));
  EXPECT_TRUE(mtl_equal(scale_mtl(parse_mtl("F(0,2) P"), k("1/2")), parse_mtl("F(0,1) P")));
  FiniteSignal f = parse_signal(kUnitP);
  Fo phi = parse_fo("P(x+1)");
  EXPECT_TRUE(fo_eval(phi, f, {{"x", k("-1/2")}}));
  EXPECT_TRUE(fo_eval(scale_fo(phi, k("1/2")), scale_signal(f, k("1/2")), {{"x", k("-1/4")}}));
  EXPECT_EQ(code_of([] { scale_fo(parse_fo("P(x)"), KNum()); }), ErrorCode::kNonPositiveScale);
  EXPECT_EQ(code_of([] { scale_mtl(parse_mtl("C>=2 P"), KNum(2)); }), ErrorCode::kWrongLogic);
}

TEST(Scale, TransferProperty) {
  Rng rng(7);
  FoGenOptions fo_opts;
  fo_opts.max_depth = 2;
  MtlGenOptions mtl_opts;
  mtl_opts.counting = false;
  for (int trial = 0; trial < 40; ++trial) {
    KNum eps = std::vector<KNum>{k("1/2"), KNum(2), KNum(3)}[rng.below(3)];
    FiniteSignal f = random_signal(rng.next(), {});
    FiniteSignal g = scale_signal(f, eps);
    KNum r(Rational(static_cast<std::int64_t>(rng.below(40)) - 20, 4));
    Fo phi = random_fo(rng, fo_opts);
    EXPECT_EQ(fo_eval(phi, f, {{"x", r}}), fo_eval(scale_fo(phi, eps), g, {{"x", eps * r}}))
        << fo_to_string(phi);
    Mtl psi = random_mtl(rng, mtl_opts);
    EXPECT_EQ(mtl_sat(psi, f).contains(r), mtl_sat(scale_mtl(psi, eps), g).contains(eps * r))
        << mtl_to_string(psi);
  }
}

TEST(SplitQuantifier, Examples) {
  QuantifierSplit s = split_quantifier(parse_fo("exists y in (x,x+2). P(y)"), var("x", KNum(1)));
  EXPECT_EQ(fo_to_string(s.less), fo_to_string(parse_fo("exists y in (x,x+1). P(y)")));
  EXPECT_EQ(fo_to_string(s.equal), fo_to_string(parse_fo("P(x+1)")));
  EXPECT_EQ(fo_to_string(s.greater), fo_to_string(parse_fo("exists y in (x+1,x+2). P(y)")));
  EXPECT_EQ(code_of([] { split_quantifier(parse_fo("exists y. P(y)"), var("x")); }),
            ErrorCode::kNotHif);
}

TEST(SplitQuantifier, NestedIntervalUnderGuard) {
  Fo f = parse_fo("exists y in (x,x+2). (P(y) /\\ exists z in (y+1,x+3). Q(z))");
  Term u = var("x", KNum(1));
  QuantifierSplit s = split_quantifier(f, u);
  EXPECT_TRUE(fragment_check(s.less, {Fragment::kHif, {}, {}, {}}));
  EXPECT_TRUE(fragment_check(s.greater, {Fragment::kHif, {}, {}, {}}));
  EXPECT_TRUE(fo_equiv(f, s.disjunction(), signals(11, 20)));
}

TEST(Hif, Examples) {
  Fo f = parse_fo("exists y. (x-1 < y /\\ y < x+1 /\\ P(y))");
  Fo h = hif_normalize(f, KNum(1));
  EXPECT_EQ(fo_to_string(h), fo_to_string(parse_fo("exists y in (x-1,x+1). P(y)")));
  Fo plain = parse_fo("P(x) /\\ ~Q(x)");
  EXPECT_TRUE(fo_equal_ast(hif_normalize(plain, KNum(1)), plain));
  Fo two = parse_fo(
      "exists y in (x-1,x+1). exists z in (x-1,x+1). (P(y) /\\ Q(z) /\\ ~(y = z))");
  Fo h2 = hif_normalize(two, KNum(1));
  EXPECT_TRUE(fragment_check(h2, {Fragment::kHif, {}, {}, {}}));
  EXPECT_TRUE(fo_equiv(two, h2, signals(13, 20)));
  EXPECT_EQ(code_of([] { hif_normalize(parse_fo("exists y. P(y)"), KNum(1)); }),
            ErrorCode::kNotBounded);
}

TEST(Hif, SelfRelativeIntervals) {
  Fo f = parse_fo(
      "exists y in (x-2,x+2). (P(y) /\\ forall z in (x-2,x+2). (~(y < z /\\ z < y+1) \\/ "
      "Q(z)))");
  Fo h = hif_normalize(f, KNum(2));
  EXPECT_TRUE(fragment_check(h, {Fragment::kHif, {}, {}, {}}));
  EXPECT_TRUE(fo_equiv(f, h, signals(17, 20)));
}

TEST(Hif, RandomBoundedFormulas) {
  Rng rng(19);
  FoGenOptions opts;
  opts.max_depth = 2;
  for (int trial = 0; trial < 12; ++trial) {
    KNum bound = rng.coin() ? KNum(1) : KNum(2);
    Fo f = random_bounded_fo(rng, opts, bound);
    Fo h = hif_normalize(f, bound);
    EXPECT_TRUE(fragment_check(h, {Fragment::kHif, {}, {}, {}})) << fo_to_string(h);
    fo_equiv(f, h, signals(rng.next(), 6));
    Fo d = remove_violations(h);
    EXPECT_FALSE(has_violation(d, "x")) << fo_to_string(d);
    fo_equiv(h, d, signals(rng.next(), 6));
  }
}

TEST(RemoveViolations, Examples) {
  Fo f = parse_fo("exists y in (x,x+1). exists z in (y+1,x+3). P(z)");
  Fo d = remove_violations(f);
  EXPECT_EQ(fo_to_string(d),
            fo_to_string(parse_fo("exists y in (x,x+1). exists z in (y,x+2). P^1(z)")));
  EXPECT_TRUE(fo_equiv(f, d, signals(23, 20)));
  Fo clean = parse_fo("exists y in (x,x+1). P(y)");
  EXPECT_TRUE(fo_equal_ast(remove_violations(clean), clean));
  Fo twice = parse_fo(
      "exists y in (x,x+1). exists w in (y,x+1). exists z in (y+1,w+1). P(z)");
  Fo once = remove_violations(twice);
  EXPECT_FALSE(has_violation(once, "x"));
  EXPECT_TRUE(fo_equiv(twice, once, signals(24, 20)));
  Fo uneven = parse_fo(
      "exists y in (x,x+1). exists w in (y,x+1). exists z in (y+1,w+2). P(z)");
  EXPECT_EQ(code_of([&] { remove_violations(uneven); }), ErrorCode::kNotHif);
  EXPECT_EQ(code_of([] { remove_violations(parse_fo("exists y. P(y)")); }), ErrorCode::kNotHif);
}

TEST(Markers, SubstituteAndSignal) {
  Fo psi = parse_fo("x < y /\\ P(y)");
  MarkerContext ctx = make_marker_context(psi);
  EXPECT_EQ(fo_to_string(marker_substitute(psi, ctx)),
            fo_to_string(fo_and({fo_pred(ctx.lt, var("y")), fo_pred("P", var("y"))})));

  Fo shifted = parse_fo("x+1 = y");
  MarkerContext c1 = make_marker_context(shifted);
  ASSERT_EQ(c1.shifts.size(), 1u);
  FiniteSignal m = marker_signal(parse_signal(kUnitP), KNum(), c1);
  EXPECT_EQ(prop_set(m, c1.eq).str(), "{0}");
  EXPECT_EQ(prop_set(m, c1.at[0]).str(), "{1}");
  EXPECT_EQ(prop_set(m, c1.lt).str(), "(0,inf)");
  EXPECT_EQ(prop_set(m, c1.gt).str(), "(-inf,0)");
  EXPECT_EQ(prop_set(m, "P").str(), "(0,1)");
  EXPECT_EQ(code_of([] {
              Fo bad = parse_fo("P(x)");
              marker_substitute(bad, make_marker_context(bad));
            }),
            ErrorCode::kUnexpectedAtomShape);
}

TEST(Markers, RoundTripAndTruthValue) {
  Fo psi = parse_fo(
      "exists y. (x < y /\\ P(y) /\\ (x+1/2 = y \\/ y < x) /\\ ~(x = y) /\\ (y < x \\/ x+1 = y))");
  MarkerContext ctx = make_marker_context(psi);
  Fo sub = marker_substitute(psi, ctx);
  EXPECT_EQ(fo_to_string(marker_unsubstitute(sub, ctx)), fo_to_string(psi));
  EXPECT_FALSE(fo_free_vars(sub).count("x"));
  Fo open = parse_fo("x < y /\\ P(y) \\/ x+1 = y");
  MarkerContext oc = make_marker_context(open);
  Fo osub = marker_substitute(open, oc);
  for (const auto& f : signals(29, 15)) {
    for (const char* v : {"-1", "0", "1/2"}) {
      FiniteSignal m = marker_signal(f, k(v), oc);
      for (const char* w : {"-1/2", "0", "1/2", "1", "3/2"}) {
        EXPECT_EQ(fo_eval(open, f, {{"x", k(v)}, {"y", k(w)}}),
                  fo_eval(osub, m, {{"y", k(w)}}));
      }
    }
  }
}

TEST(PredicateLift, Examples) {
  FiniteSignal f = parse_signal(kUnitP);
  FiniteSignal g = predicate_lift(f, {{"NotP", parse_mtl("!P")}, {"Soon", parse_mtl("F(0,1) P")}});
  EXPECT_EQ(prop_set(g, "NotP"), prop_set(f, "P").complement());
  EXPECT_EQ(prop_set(g, "Soon").str(), "(-1,1)");
  EXPECT_EQ(prop_set(g, "P"), prop_set(f, "P"));
  EXPECT_EQ(code_of([&] { predicate_lift(f, {{"P", parse_mtl("P")}}); }), ErrorCode::kNameClash);
}

Decomposition decomp(const char* text) { return parse_decomposition(text); }

TEST(Decomposition, FoRendering) {
  Fo one = decomposition_to_fo(decomp("decomp c=1 psi1=\"P\""));
  EXPECT_EQ(fo_to_string(one), fo_to_string(parse_fo("forall u in (x,x+1). Psi1(u)")));
  Fo two = decomposition_to_fo(decomp("decomp c=1 psi1=\"P\" phi1=\"Q\" psi2=\"P\""));
  EXPECT_EQ(fo_free_vars(two), std::set<std::string>{"x"});
  EXPECT_EQ(fo_quantifier_depth(two), 2);
}

TEST(Decomposition, TranslationExamples) {
  KGroup quarter = parse_group("1/4");
  Mtl base = translate_decomposition(decomp("decomp c=1 psi1=\"P\""), quarter);
  EXPECT_TRUE(mtl_equal(base, parse_mtl("G(0,1) P")));
  EXPECT_EQ(code_of([] {
              translate_decomposition(decomp("decomp c=1 psi1=\"P\" phi1=\"Q\" psi2=\"P\""),
                                      parse_group("1"));
            }),
            ErrorCode::kNuUnavailable);
  EXPECT_EQ(code_of([&] {
              translate_decomposition(decomp("decomp c=1 psi1=\"P\" phi1=\"Q\" psi2=\"P\""),
                                      quarter, k("1/2"));
            }),
            ErrorCode::kInvalidNu);
}

void expect_translation_matches(const Decomposition& d, const KGroup& g,
                                const std::vector<FiniteSignal>& sigs,
                                std::optional<KNum> nu = std::nullopt) {
  Mtl m = translate_decomposition(d, g, nu);
  Fo fo = decomposition_to_fo(d);
  for (const auto& s : sigs) {
    FiniteSignal lifted = lift_decomposition(s, d);
    EXPECT_EQ(mtl_sat(m, lifted), fo_sat(fo, lifted))
        << decomposition_to_string(d) << "\n" << signal_to_text(s);
  }
}

TEST(Decomposition, TranslationMatchesRendering) {
  auto sigs = signals(31, 12);
  expect_translation_matches(decomp("decomp c=1 psi1=\"P\" phi1=\"Q\" psi2=\"P\""),
                             parse_group("1/4"), sigs, k("1/4"));
  expect_translation_matches(decomp("decomp c=3/2 psi1=\"P\" phi1=\"!P\" psi2=\"Q\""),
                             parse_group("1/2 rt2"), sigs);
  expect_translation_matches(
      decomp("decomp c=2 psi1=\"P\" phi1=\"Q\" psi2=\"!Q\" phi2=\"P\" psi3=\"Q\""),
      parse_group("1 rt2"), signals(37, 4));
}

TEST(DeltaJ, Shapes) {
  Decomposition d = decomp("decomp c=1 psi1=\"P\" phi1=\"Q\" psi2=\"P\"");
  EXPECT_EQ(fo_to_string(build_delta_j(d, 1)),
            fo_to_string(parse_fo("x < y /\\ forall u in (x,y). Psi1(u)")));
  Fo two = build_delta_j(d, 2);
  std::set<std::string> preds;
  fo_preds(two, preds);
  EXPECT_TRUE(preds.count("Phi1"));
  EXPECT_EQ(code_of([&] { build_delta_j(d, 4); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([] { build_delta_prime(decomp("decomp c=2 psi1=\"P\"")); }),
            ErrorCode::kWrongBound);
}

TEST(DeltaPrime, Examples) {
  Decomposition d = decomp("decomp c=1 psi1=\"P\"");
  Fo dp = build_delta_prime(d);
  EXPECT_TRUE(fragment_check(dp, {Fragment::kPq2mlo, {}, {}, {}}));
  Fo fo = decomposition_to_fo(d);
  FiniteSignal wide = lift_decomposition(
      parse_signal("before {}\nat 0 {}\non (0,2) {P}\nat 2 {}\nafter {}\n"), d);
  EXPECT_TRUE(fo_eval(fo, wide, {{"x", KNum()}}));
  EXPECT_TRUE(pq2mlo_eval(dp, wide, {{"x", KNum()}}));
  FiniteSignal narrow = lift_decomposition(
      parse_signal("before {}\nat 0 {}\non (0,1/2) {P}\nat 1/2 {}\nafter {}\n"), d);
  EXPECT_FALSE(fo_eval(fo, narrow, {{"x", KNum()}}));
  EXPECT_FALSE(pq2mlo_eval(dp, narrow, {{"x", KNum()}}));
}

TEST(DeltaPrime, MatchesRendering) {
  for (const char* text : {"decomp c=1 psi1=\"P\"", "decomp c=1 psi1=\"P\" phi1=\"Q\" psi2=\"!P\""}) {
    Decomposition d = decomp(text);
    Fo dp = build_delta_prime(d);
    Fo fo = decomposition_to_fo(d);
    for (const auto& s : signals(41, 10)) {
      FiniteSignal lifted = lift_decomposition(s, d);
      EXPECT_EQ(pq2mlo_sat(dp, lifted), fo_sat(fo, lifted)) << text << "\n" << signal_to_text(s);
    }
  }
}

TEST(PunctualRewrite, Examples) {
  CoreTranslation core;
  EXPECT_TRUE(mtl_equal(punctual_rewrite(parse_pq2mlo("D1+ y. P(y)"), core),
                        parse_mtl("F{1} P")));
  EXPECT_TRUE(mtl_equal(punctual_rewrite(parse_pq2mlo("D1- y. P(y)"), core),
                        parse_mtl("Fp{1} P")));
  Fo nested = parse_pq2mlo("D1+ y. D1+ z. P(z)");
  Mtl m = punctual_rewrite(nested, core);
  EXPECT_TRUE(mtl_equal(m, parse_mtl("F{1} F{1} P")));
  for (const auto& s : signals(43, 20)) EXPECT_EQ(mtl_sat(m, s), pq2mlo_sat(nested, s));
  EXPECT_EQ(code_of([&] { punctual_rewrite(parse_pq2mlo("D1+ y. E[y,y+1] z. P(z)"), core); }),
            ErrorCode::kMissingCoreTranslation);
  core[fo_to_string(parse_pq2mlo("E[x,x+1] z. P(z)"))] = parse_mtl("F(0,1) P");
  Fo guarded = parse_pq2mlo("D1+ y. E[y,y+1] z. P(z)");
  Mtl g = punctual_rewrite(guarded, core);
  for (const auto& s : signals(47, 20)) EXPECT_EQ(mtl_sat(g, s), pq2mlo_sat(guarded, s));
}

TEST(KLimit, Examples) {
  FiniteSignal f = parse_signal(kUnitP);
  SatSet plus = mtl_sat(k_limit(parse_mtl("P"), LimitSide::kPlus, KNum(1)), f);
  EXPECT_TRUE(plus.contains(KNum()));
  EXPECT_TRUE(plus.contains(k("1/2")));
  EXPECT_FALSE(plus.contains(KNum(1)));
  Rng rng(53);
  MtlGenOptions opts;
  opts.max_depth = 2;
  for (int trial = 0; trial < 30; ++trial) {
    Mtl phi = random_mtl(rng, opts);
    FiniteSignal s = random_signal(rng.next(), {});
    for (LimitSide side : {LimitSide::kPlus, LimitSide::kMinus}) {
      EXPECT_EQ(mtl_sat(k_limit(phi, side, KNum(1)), s),
                mtl_sat(k_limit(phi, side, k("1/2")), s));
    }
  }
  EXPECT_EQ(code_of([] { k_limit(parse_mtl("P"), LimitSide::kPlus, KNum()); }),
            ErrorCode::kInvalidNu);
  EXPECT_EQ(code_of([] {
              k_limit(parse_mtl("P"), LimitSide::kPlus, k("1/2"), parse_group("1"));
            }),
            ErrorCode::kInvalidNu);
}

TEST(SeparationN, Examples) {
  EXPECT_EQ(separation_n_choice(parse_mtl("P S[1,3] Q"), KNum(1), parse_group("1")), KNum(5));
  EXPECT_EQ(separation_n_choice(parse_mtl("P"), KNum(), parse_group("1")), KNum(1));
  EXPECT_EQ(code_of([] {
              separation_n_choice(parse_mtl("P S(0,inf) Q"), KNum(1), parse_group("1"));
            }),
            ErrorCode::kInfiniteReach);
}

}  // namespace
}  // namespace mtlk
