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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "mtlk/error.hpp"

namespace mtlk {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min() + 1) {
    throw Error(ErrorCode::kNumericOverflow, "rational out of 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(i128 n, i128 d) {
  if (d == 0) throw Error(ErrorCode::kNumericOverflow, "division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorCode::kNumericOverflow, "zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  i128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  num_ = narrow(nn);
  den_ = narrow(dd);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return make(-static_cast<i128>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return make(static_cast<i128>(a.num_) + b.num_, a.den_);
  return make(static_cast<i128>(a.num_) * b.den_ +
                  static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.num_ == 0 || b.num_ == 0) return Rational();
  return make(static_cast<i128>(a.num_) * b.num_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::kNumericOverflow, "division by zero");
  return make(static_cast<i128>(a.num_) * b.den_,
              static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_;
  i128 r = static_cast<i128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return abs(b);
  if (b.is_zero()) return abs(a);
  i128 n = gcd128(a.num(), b.num());
  i128 d = static_cast<i128>(a.den()) / gcd128(a.den(), b.den()) * b.den();
  return make(n, d);
}

void KNum::refresh() {
  approx_ = a_.to_double() + b_.to_double() * std::sqrt(2.0);
  magnitude_ = std::fabs(a_.to_double()) + 1.5 * std::fabs(b_.to_double());
}

int KNum::sign() const {
  int sa = a_.sign(), sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b have opposite signs: compare a^2 with 2 b^2.
  using boost::multiprecision::int256_t;
  int256_t p = a_.num(), q = a_.den(), r = b_.num(), s = b_.den();
  int256_t lhs = p * p * s * s;
  int256_t rhs = 2 * r * r * q * q;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

std::string KNum::str() const {
  if (b_.is_zero()) return a_.str();
  std::string out;
  if (!a_.is_zero()) out = a_.str();
  Rational b = b_;
  if (b.sign() < 0) {
    out += "-";
    b = -b;
  } else if (!out.empty()) {
    out += "+";
  }
  if (b != Rational(1)) out += b.str() + "*";
  out += "rt2";
  return out;
}

std::size_t KNum::hash() const {
  std::size_t h = std::hash<std::int64_t>()(a_.num());
  auto mix = [&h](std::int64_t v) {
    h ^= std::hash<std::int64_t>()(v) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  };
  mix(a_.den());
  mix(b_.num());
  mix(b_.den());
  return h;
}

KNum operator*(const KNum& x, const KNum& y) {
  return KNum(x.a_ * y.a_ + Rational(2) * x.b_ * y.b_,
              x.a_ * y.b_ + x.b_ * y.a_);
}

KNum operator/(const KNum& x, const KNum& y) {
  if (y.is_zero()) throw Error(ErrorCode::kNumericOverflow, "division by zero");
  // Multiply by the conjugate a - b*sqrt2.
  Rational norm = y.a_ * y.a_ - Rational(2) * y.b_ * y.b_;
  KNum num = x * KNum(y.a_, -y.b_);
  return KNum(num.a_ / norm, num.b_ / norm);
}

std::strong_ordering operator<=>(const KNum& x, const KNum& y) {
  double d = x.approx_ - y.approx_;
  double tol = 1e-12 * (1.0 + x.magnitude_ + y.magnitude_);
  if (d > tol) return std::strong_ordering::greater;
  if (d < -tol) return std::strong_ordering::less;
  if (x == y) return std::strong_ordering::equal;
  int s = (x - y).sign();
  if (s > 0) return std::strong_ordering::greater;
  if (s < 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

KNum abs(const KNum& x) { return x.sign() < 0 ? -x : x; }

KNum midpoint(const KNum& x, const KNum& y) {
  KNum s = x + y;
  return KNum(s.rational_part() * Rational(1, 2),
              s.sqrt2_part() * Rational(1, 2));
}

std::ostream& operator<<(std::ostream& os, const KNum& x) { return os << x.str(); }
std::ostream& operator<<(std::ostream& os, const Rational& x) {
  return os << x.str();
}

namespace {

void skip_ws(std::string_view t, std::size_t& p) {
  while (p < t.size() && (t[p] == ' ' || t[p] == '\t')) ++p;
}

bool read_uint(std::string_view t, std::size_t& p, std::int64_t& out) {
  std::size_t start = p;
  i128 v = 0;
  while (p < t.size() && t[p] >= '0' && t[p] <= '9') {
    v = v * 10 + (t[p] - '0');
    if (v > std::numeric_limits<std::int64_t>::max()) {
      throw Error(ErrorCode::kNumericOverflow, "integer literal too large");
    }
    ++p;
  }
  out = static_cast<std::int64_t>(v);
  return p > start;
}

bool read_rt2(std::string_view t, std::size_t& p) {
  if (t.substr(p, 3) != "rt2") return false;
  std::size_t after = p + 3;
  if (after < t.size() &&
      (std::isalnum(static_cast<unsigned char>(t[after])) || t[after] == '_')) {
    return false;
  }
  p = after;
  return true;
}

// One unsigned term: `rt2`, `p`, `p/q`, `p*rt2`, `p/q*rt2`.
std::optional<KNum> scan_term(std::string_view t, std::size_t& p) {
  std::size_t q = p;
  skip_ws(t, q);
  if (read_rt2(t, q)) {
    p = q;
    return KNum::sqrt2();
  }
  std::int64_t n = 0, d = 1;
  if (!read_uint(t, q, n)) return std::nullopt;
  std::size_t save = q;
  if (q < t.size() && t[q] == '/') {
    ++q;
    if (!read_uint(t, q, d) || d == 0) {
      q = save;
      d = 1;
    }
  }
  Rational r(n, d);
  std::size_t star = q;
  skip_ws(t, star);
  if (star < t.size() && t[star] == '*') {
    std::size_t r2 = star + 1;
    skip_ws(t, r2);
    if (read_rt2(t, r2)) {
      p = r2;
      return KNum(Rational(0), r);
    }
  }
  p = q;
  return KNum(r);
}

}  // namespace

std::optional<KNum> scan_knum(std::string_view text, std::size_t& pos) {
  std::size_t p = pos;
  skip_ws(text, p);
  int sign = 1;
  if (p < text.size() && (text[p] == '-' || text[p] == '+')) {
    sign = text[p] == '-' ? -1 : 1;
    ++p;
  }
  auto first = scan_term(text, p);
  if (!first) return std::nullopt;
  KNum total = sign > 0 ? *first : -*first;
  for (;;) {
    std::size_t q = p;
    skip_ws(text, q);
    if (q >= text.size() || (text[q] != '+' && text[q] != '-')) break;
    int s = text[q] == '-' ? -1 : 1;
    ++q;
    auto term = scan_term(text, q);
    if (!term) break;
    total += s > 0 ? *term : -*term;
    p = q;
  }
  pos = p;
  return total;
}

KNum parse_knum(std::string_view text) {
  std::size_t pos = 0;
  auto v = scan_knum(text, pos);
  if (!v) throw SyntaxError(pos, "expected a constant");
  skip_ws(text, pos);
  if (pos != text.size()) throw SyntaxError(pos, "trailing input after constant");
  return *v;
}

std::string KGroup::str() const {
  std::string out = "<";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ", ";
    out += generators[i].str();
  }
  return out + ">";
}

KGroup parse_group(std::string_view text) {
  KGroup g;
  std::string s(text);
  for (char& c : s) {
    if (c == ',' || c == '<' || c == '>') c = ' ';
  }
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) g.generators.push_back(parse_knum(tok));
  return g;
}

namespace {

std::vector<KNum> nonzero(const KGroup& g) {
  std::vector<KNum> out;
  for (const auto& x : g.generators) {
    if (!x.is_zero()) out.push_back(x);
  }
  return out;
}

// Lattice in Z^2 spanned by integer vectors, kept in triangular form:
// {(h, 0)} and (wu, gv).
struct Lattice2 {
  i128 h = 0;
  i128 wu = 0;
  i128 gv = 0;

  static void extgcd(i128 a, i128 b, i128& g, i128& s, i128& t) {
    i128 old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (r != 0) {
      i128 q = old_r / r;
      i128 tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * ss;
      old_s = ss;
      ss = tmp;
      tmp = old_t - q * tt;
      old_t = tt;
      tt = tmp;
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
  }

  void add(i128 u, i128 v) {
    if (v == 0) {
      h = gcd128(h, u);
    } else if (gv == 0) {
      wu = v < 0 ? -u : u;
      gv = v < 0 ? -v : v;
    } else {
      i128 d, s, t;
      extgcd(gv, v, d, s, t);
      i128 zu = (v / d) * wu - (gv / d) * u;
      h = gcd128(h, zu);
      wu = s * wu + t * u;
      gv = d;
    }
    if (h != 0) wu %= h;
  }

  bool contains(i128 u, i128 v) const {
    if (gv == 0) {
      if (v != 0) return false;
    } else {
      if (v % gv != 0) return false;
      u -= (v / gv) * wu;
    }
    if (h == 0) return u == 0;
    return u % h == 0;
  }
};

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  i128 g = gcd128(a, b);
  return narrow(static_cast<i128>(a) / g * b);
}

// Visits coefficient vectors of length m with L1 norm exactly k in
// lexicographic order; stops when `visit` returns true.
bool for_each_norm(std::size_t m, std::int64_t k, std::vector<std::int64_t>& c,
                   const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  std::size_t i = c.size();
  if (i + 1 == m) {
    if (k == 0) {
      c.push_back(0);
      bool done = visit(c);
      c.pop_back();
      return done;
    }
    for (std::int64_t v : {-k, k}) {
      c.push_back(v);
      bool done = visit(c);
      c.pop_back();
      if (done) return true;
    }
    return false;
  }
  for (std::int64_t v = -k; v <= k; ++v) {
    c.push_back(v);
    bool done = for_each_norm(m, k - (v < 0 ? -v : v), c, visit);
    c.pop_back();
    if (done) return true;
  }
  return false;
}

KNum combine(const std::vector<KNum>& gens, const std::vector<std::int64_t>& c) {
  KNum v;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (c[i] != 0) v += KNum(c[i]) * gens[i];
  }
  return v;
}

constexpr std::int64_t kMaxSearchNorm = 200000;

}  // namespace

DensityResult is_dense(const KGroup& g) {
  auto gens = nonzero(g);
  DensityResult res;
  if (gens.empty()) {
    res.dense = true;
    return res;
  }
  Rational gcd_ratio;
  for (const auto& x : gens) {
    KNum ratio = x / gens[0];
    if (!ratio.is_rational()) {
      res.dense = true;
      return res;
    }
    gcd_ratio = rational_gcd(gcd_ratio, ratio.rational_part());
  }
  res.epsilon = abs(gens[0] * KNum(gcd_ratio));
  return res;
}

bool group_contains(const KGroup& g, const KNum& x) {
  auto gens = nonzero(g);
  if (x.is_zero()) return true;
  if (gens.empty()) return false;
  std::int64_t d = 1;
  for (const auto& v : gens) {
    d = lcm64(d, v.rational_part().den());
    d = lcm64(d, v.sqrt2_part().den());
  }
  Lattice2 lat;
  for (const auto& v : gens) {
    lat.add(static_cast<i128>(v.rational_part().num()) * (d / v.rational_part().den()),
            static_cast<i128>(v.sqrt2_part().num()) * (d / v.sqrt2_part().den()));
  }
  Rational xu = x.rational_part() * Rational(d);
  Rational xv = x.sqrt2_part() * Rational(d);
  if (!xu.is_integer() || !xv.is_integer()) return false;
  return lat.contains(xu.num(), xv.num());
}

KNum pick_nu(const KGroup& g, const KNum& bound) {
  auto gens = nonzero(g);
  if (gens.empty() || bound.sign() <= 0) {
    throw Error(ErrorCode::kNoSuchElement,
                "no element of " + g.str() + " in (0, " + bound.str() + "]");
  }
  auto d = is_dense(g);
  if (!d.dense) {
    if (*d.epsilon <= bound) return *d.epsilon;
    throw Error(ErrorCode::kNoSuchElement,
                "no element of " + g.str() + " in (0, " + bound.str() + "]");
  }
  std::optional<KNum> found;
  std::vector<std::int64_t> c;
  for (std::int64_t k = 1; k <= kMaxSearchNorm && !found; ++k) {
    for_each_norm(gens.size(), k, c, [&](const std::vector<std::int64_t>& cc) {
      KNum v = combine(gens, cc);
      if (v.sign() > 0 && v <= bound) {
        found = v;
        return true;
      }
      return false;
    });
  }
  if (!found) {
    throw Error(ErrorCode::kNoSuchElement, "search limit reached in " + g.str());
  }
  return *found;
}

KNum least_above(const KGroup& g, const KNum& threshold) {
  auto gens = nonzero(g);
  if (gens.empty()) {
    throw Error(ErrorCode::kNoSuchElement, "trivial group has no positive element");
  }
  auto d = is_dense(g);
  if (!d.dense) {
    const KNum& eps = *d.epsilon;
    KNum q = threshold / eps;
    std::int64_t n = q.rational_part().floor() + 1;
    return KNum(n) * eps;
  }
  std::optional<KNum> best;
  std::vector<std::int64_t> c;
  for (std::int64_t k = 1; k <= kMaxSearchNorm && !best; ++k) {
    for_each_norm(gens.size(), k, c, [&](const std::vector<std::int64_t>& cc) {
      KNum v = combine(gens, cc);
      if (v > threshold && (!best || v < *best)) best = v;
      return false;
    });
  }
  if (!best) throw Error(ErrorCode::kNoSuchElement, "search limit reached");
  return *best;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kIntervalError: return "IntervalError";
    case ErrorCode::kWrongLogic: return "WrongLogic";
    case ErrorCode::kNonPositiveScale: return "NonPositiveScale";
    case ErrorCode::kPoolTooSmall: return "PoolTooSmall";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kDepthExceeded: return "DepthExceeded";
    case ErrorCode::kNotInFragment: return "NotInFragment";
    case ErrorCode::kNotHif: return "NotHIF";
    case ErrorCode::kNotBounded: return "NotBounded";
    case ErrorCode::kUnexpectedAtomShape: return "UnexpectedAtomShape";
    case ErrorCode::kNameClash: return "NameClash";
    case ErrorCode::kNuUnavailable: return "NuUnavailable";
    case ErrorCode::kInvalidNu: return "InvalidNu";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kWrongBound: return "WrongBound";
    case ErrorCode::kMissingCoreTranslation: return "MissingCoreTranslation";
    case ErrorCode::kInfiniteReach: return "InfiniteReach";
    case ErrorCode::kNoSuchElement: return "NoSuchElement";
    case ErrorCode::kCorpusCorrupt: return "CorpusCorrupt";
    case ErrorCode::kNumericOverflow: return "NumericOverflow";
    case ErrorCode::kInvalidSignal: return "InvalidSignal";
  }
  return "Error";
}

}  // namespace mtlk
