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

#include "mtlk/satset.hpp"

#include <gtest/gtest.h>

#include "mtlk/error.hpp"
#include "mtlk/signal.hpp"

namespace mtlk {
namespace {

// Membership oracle on a dense sample grid: quarter points in [-6, 6].
std::vector<KNum> probes() {
  std::vector<KNum> out;
  for (int n = -48; n <= 48; ++n) out.push_back(KNum(Rational(n, 8)));
  return out;
}

SatSet random_set(Rng& rng) {
  std::vector<Component> comps;
  int k = static_cast<int>(rng.below(4));
  for (int i = 0; i < k; ++i) {
    int a = static_cast<int>(rng.below(17)) - 8;
    int b = a + static_cast<int>(rng.below(5));
    Component c;
    if (rng.below(8) != 0) c.lo = KNum(Rational(a, 2));
    if (rng.below(8) != 0) c.hi = KNum(Rational(b, 2));
    c.lo_closed = c.lo && rng.coin();
    c.hi_closed = c.hi && rng.coin();
    if (c.lo && c.hi && *c.lo == *c.hi) c.lo_closed = c.hi_closed = true;
    comps.push_back(c);
  }
  return SatSet::from_components(comps);
}

TEST(SatSet, PrintsComponents) {
  SatSet s = parse_satset("(-1,1) U [2,3] U {5}");
  EXPECT_EQ(s.str(), "(-1,1) U [2,3] U {5}");
  EXPECT_EQ(SatSet().str(), "empty");
  EXPECT_EQ(SatSet::all().str(), "(-inf,inf)");
}

TEST(SatSet, NormalizesTouchingPieces) {
  SatSet s = parse_satset("(0,1) U {1} U (1,2]");
  EXPECT_EQ(s.str(), "(0,2]");
  EXPECT_EQ(parse_satset("(0,1) U (1,2)").size(), 2u);
  EXPECT_EQ(parse_satset("[0,1) U [1,2)").str(), "[0,2)");
}

TEST(SatSet, AlgebraAgreesWithPointwiseOracle) {
  Rng rng(11);
  for (int i = 0; i < 400; ++i) {
    SatSet a = random_set(rng), b = random_set(rng);
    SatSet u = a.unite(b), n = a.intersect(b), c = a.complement();
    for (const auto& x : probes()) {
      EXPECT_EQ(u.contains(x), a.contains(x) || b.contains(x));
      EXPECT_EQ(n.contains(x), a.contains(x) && b.contains(x));
      EXPECT_EQ(c.contains(x), !a.contains(x));
      EXPECT_EQ(a.reflect().contains(-x), a.contains(x));
      EXPECT_EQ(a.shift(KNum(1)).contains(x + KNum(1)), a.contains(x));
    }
    EXPECT_EQ(c.complement(), a);
    EXPECT_EQ(parse_satset(a.str()), a);
    if (!a.is_empty()) EXPECT_TRUE(a.contains(a.representative()));
  }
}

TEST(Signal, ValueAtAndTextRoundTrip) {
  FiniteSignal f = parse_signal(
      "before {P Q}\nat 0 {P}\non (0,1) {P Q}\nat 1 {}\nafter {Q}\n");
  EXPECT_EQ(value_at(f, KNum(-5)), (Valuation{"P", "Q"}));
  EXPECT_EQ(value_at(f, KNum(0)), (Valuation{"P"}));
  EXPECT_EQ(value_at(f, KNum(Rational(1, 2))), (Valuation{"P", "Q"}));
  EXPECT_EQ(value_at(f, KNum(1)), Valuation{});
  EXPECT_EQ(value_at(f, KNum(3)), (Valuation{"Q"}));
  EXPECT_EQ(prop_set(f, "P").str(), "(-inf,1)");
  EXPECT_EQ(prop_set(f, "Q").str(), "(-inf,0) U (0,1) U (1,inf)");
  EXPECT_EQ(signal_to_text(parse_signal(signal_to_text(f))), signal_to_text(f));
}

TEST(Signal, ScaleAndRandom) {
  FiniteSignal f = parse_signal("before {}\nat 1 {P}\nafter {}\n");
  EXPECT_EQ(prop_set(scale_signal(f, KNum(2)), "P").str(), "{2}");
  EXPECT_THROW(scale_signal(f, KNum(0)), Error);
  RandomSignalOptions opts;
  opts.num_breakpoints = 8;
  FiniteSignal a = random_signal(3, opts), b = random_signal(3, opts);
  EXPECT_EQ(signal_to_text(a), signal_to_text(b));
  EXPECT_EQ(a.breakpoints.size(), 8u);
  opts.endpoint_pool = {KNum(0), KNum(1)};
  opts.num_breakpoints = 3;
  try {
    random_signal(0, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPoolTooSmall);
  }
}

TEST(Signal, PointOnlyOccurrencesAppear) {
  RandomSignalOptions opts;
  opts.num_breakpoints = 6;
  int isolated = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    FiniteSignal f = random_signal(s, opts);
    for (const auto& c : prop_set(f, "P").components()) isolated += c.is_point();
  }
  EXPECT_GT(isolated, 0);
}

}  // namespace
}  // namespace mtlk
