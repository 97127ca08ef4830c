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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mtlk {

// Exact rational in lowest terms with a positive denominator. Arithmetic is
// checked and throws NumericOverflow instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(runtime/explicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string str() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
Rational rational_gcd(const Rational& a, const Rational& b);

// Element a + b*sqrt(2) of Q(sqrt 2); ordering is exact.
class KNum {
 public:
  KNum() = default;
  KNum(std::int64_t a) : a_(a) { refresh(); }  // NOLINT(runtime/explicit)
  KNum(Rational a) : a_(a) { refresh(); }      // NOLINT(runtime/explicit)
  KNum(Rational a, Rational b) : a_(a), b_(b) { refresh(); }

  static KNum sqrt2() { return KNum(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  int sign() const;
  double approx() const { return approx_; }
  std::string str() const;
  std::size_t hash() const;

  KNum operator-() const { return KNum(-a_, -b_); }
  friend KNum operator+(const KNum& x, const KNum& y) {
    return KNum(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend KNum operator-(const KNum& x, const KNum& y) {
    return KNum(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend KNum operator*(const KNum& x, const KNum& y);
  friend KNum operator/(const KNum& x, const KNum& y);
  KNum& operator+=(const KNum& o) { return *this = *this + o; }
  KNum& operator-=(const KNum& o) { return *this = *this - o; }

  friend bool operator==(const KNum& x, const KNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const KNum& x, const KNum& y);

 private:
  void refresh();

  Rational a_;
  Rational b_;
  double approx_ = 0.0;
  double magnitude_ = 0.0;
};

KNum abs(const KNum& x);
KNum midpoint(const KNum& x, const KNum& y);
std::ostream& operator<<(std::ostream& os, const KNum& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);

struct KNumHash {
  std::size_t operator()(const KNum& x) const { return x.hash(); }
};

// Parses `p`, `p/q`, `rt2`, `p/q*rt2` and signed sums of these.
KNum parse_knum(std::string_view text);
// Reads a constant starting at `pos`; on success advances `pos`.
std::optional<KNum> scan_knum(std::string_view text, std::size_t& pos);

// Additive subgroup of the reals generated by finitely many constants.
struct KGroup {
  std::vector<KNum> generators;
  std::string str() const;
};

struct DensityResult {
  bool dense = false;
  std::optional<KNum> epsilon;  // set iff not dense
};

DensityResult is_dense(const KGroup& g);
bool group_contains(const KGroup& g, const KNum& x);
// Some element of G in (0, bound]; NoSuchElement if none exists.
KNum pick_nu(const KGroup& g, const KNum& bound);
// Smallest element of G strictly above `threshold` found by ordered search.
KNum least_above(const KGroup& g, const KNum& threshold);
KGroup parse_group(std::string_view text);

}  // namespace mtlk
