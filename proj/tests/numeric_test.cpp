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

#include "mtlk/numeric.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "mtlk/error.hpp"
#include "mtlk/signal.hpp"

namespace mtlk {
namespace {

using Dec = boost::multiprecision::cpp_dec_float_100;

Dec to_dec(const KNum& x) {
  Dec a = Dec(x.rational_part().num()) / Dec(x.rational_part().den());
  Dec b = Dec(x.sqrt2_part().num()) / Dec(x.sqrt2_part().den());
  return a + b * boost::multiprecision::sqrt(Dec(2));
}

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
}

TEST(Rational, OverflowIsReported) {
  Rational big(std::int64_t{1} << 62);
  try {
    (void)(big * big);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNumericOverflow);
  }
}

TEST(KNum, SignOfMixedTerms) {
  EXPECT_EQ(KNum(Rational(3), Rational(-2)).sign(), 1);   // 3 - 2.828
  EXPECT_EQ(KNum(Rational(-7), Rational(5)).sign(), 1);   // 7.071 - 7
  EXPECT_EQ(KNum(Rational(17), Rational(-12)).sign(), 1);
  EXPECT_EQ(KNum(Rational(-17), Rational(12)).sign(), -1);
  EXPECT_EQ(KNum(Rational(99), Rational(-70)).sign(), 1);
  EXPECT_EQ(KNum().sign(), 0);
}

TEST(KNum, OrderingAgreesWithHighPrecisionOracle) {
  Rng rng(7);
  for (int i = 0; i < 3000; ++i) {
    auto draw = [&] {
      std::int64_t scale = rng.coin() ? 1000 : 3037000499LL;
      auto r = [&] {
        return Rational(static_cast<std::int64_t>(rng.below(2 * scale)) - scale,
                        1 + static_cast<std::int64_t>(rng.below(scale)));
      };
      return KNum(r(), r());
    };
    KNum x = draw(), y = draw();
    Dec dx = to_dec(x), dy = to_dec(y);
    EXPECT_EQ(x < y, dx < dy) << x << " vs " << y;
    EXPECT_EQ(x.sign(), dx > 0 ? 1 : (dx < 0 ? -1 : 0)) << x;
  }
}

TEST(KNum, FieldArithmetic) {
  KNum r2 = KNum::sqrt2();
  EXPECT_EQ(r2 * r2, KNum(2));
  KNum x(Rational(3), Rational(-2));
  EXPECT_EQ(x * (KNum(1) / x), KNum(1));
  EXPECT_EQ(midpoint(KNum(1), KNum(2)), KNum(Rational(3, 2)));
}

TEST(KNum, ParseAndPrintRoundTrip) {
  for (const char* s : {"0", "3", "-1/2", "rt2", "-rt2", "3/2+1/2*rt2",
                        "-1+2*rt2", "2*rt2", "17-12*rt2"}) {
    KNum v = parse_knum(s);
    EXPECT_EQ(v.str(), s);
    EXPECT_EQ(parse_knum(v.str()), v);
  }
  EXPECT_EQ(parse_knum("1/4 + 1/4"), KNum(Rational(1, 2)));
  EXPECT_THROW(parse_knum("x"), SyntaxError);
  EXPECT_THROW(parse_knum("1 2"), SyntaxError);
}

TEST(KGroup, DensityTable) {
  EXPECT_TRUE(is_dense(parse_group("")).dense);
  auto one = is_dense(parse_group("1"));
  ASSERT_FALSE(one.dense);
  EXPECT_EQ(*one.epsilon, KNum(1));
  auto r2 = is_dense(parse_group("rt2"));
  ASSERT_FALSE(r2.dense);
  EXPECT_EQ(*r2.epsilon, KNum::sqrt2());
  auto sixth = is_dense(parse_group("1/2 1/3"));
  ASSERT_FALSE(sixth.dense);
  EXPECT_EQ(*sixth.epsilon, KNum(Rational(1, 6)));
  EXPECT_TRUE(is_dense(parse_group("1 rt2")).dense);
  auto neg = is_dense(parse_group("0 -3/4 1/2"));
  ASSERT_FALSE(neg.dense);
  EXPECT_EQ(*neg.epsilon, KNum(Rational(1, 4)));
}

TEST(KGroup, MembershipMatchesBruteForce) {
  KGroup g = parse_group("1/2 1/3");
  for (int n = -24; n <= 24; ++n) {
    EXPECT_TRUE(group_contains(g, KNum(Rational(n, 6))));
    EXPECT_FALSE(group_contains(g, KNum(Rational(2 * n + 1, 12))));
  }
  KGroup mixed = parse_group("1 rt2");
  EXPECT_TRUE(group_contains(mixed, parse_knum("3-2*rt2")));
  EXPECT_FALSE(group_contains(mixed, parse_knum("1/2+rt2")));
  KGroup skew = parse_group("1+rt2 2");
  // Brute force over small coefficient pairs.
  for (int a = -5; a <= 5; ++a) {
    for (int b = -5; b <= 5; ++b) {
      KNum v = KNum(a) * parse_knum("1+rt2") + KNum(2 * b);
      EXPECT_TRUE(group_contains(skew, v)) << v;
    }
  }
  EXPECT_FALSE(group_contains(skew, KNum(1)));
  EXPECT_FALSE(group_contains(skew, KNum::sqrt2()));
  EXPECT_TRUE(group_contains(skew, KNum(2) * KNum::sqrt2()));
}

TEST(KGroup, PickNu) {
  EXPECT_EQ(pick_nu(parse_group("1/4"), KNum(Rational(1, 4))), KNum(Rational(1, 4)));
  EXPECT_THROW(pick_nu(parse_group("1"), KNum(Rational(1, 4))), Error);
  EXPECT_THROW(pick_nu(parse_group(""), KNum(1)), Error);
  for (const char* b : {"1/4", "1/10", "1/100"}) {
    KNum bound = parse_knum(b);
    KNum nu = pick_nu(parse_group("1 rt2"), bound);
    EXPECT_GT(nu.sign(), 0);
    EXPECT_LE(nu, bound);
    EXPECT_TRUE(group_contains(parse_group("1 rt2"), nu));
  }
  EXPECT_EQ(pick_nu(parse_group("1 rt2"), KNum(Rational(1, 4))), parse_knum("3-2*rt2"));
}

TEST(KGroup, LeastAbove) {
  EXPECT_EQ(least_above(parse_group("1"), KNum(4)), KNum(5));
  EXPECT_EQ(least_above(parse_group("1/4"), KNum(Rational(9, 2))), KNum(Rational(19, 4)));
  KNum n = least_above(parse_group("1 rt2"), KNum(4));
  EXPECT_GT(n, KNum(4));
}

}  // namespace
}  // namespace mtlk
