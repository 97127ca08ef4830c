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

#include "mtlk/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "mtlk/error.hpp"

namespace mtlk {

// ---------------------------------------------------------------- intervals

IntervalK IntervalK::make(const KNum& lo, bool lo_closed, std::optional<KNum> hi,
                          bool hi_closed) {
  if (lo.sign() < 0) throw Error(ErrorCode::kIntervalError, "negative lower endpoint");
  if (lo.is_zero() && lo_closed) {
    throw Error(ErrorCode::kIntervalError, "interval must exclude 0");
  }
  if (hi) {
    if (*hi < lo) throw Error(ErrorCode::kIntervalError, "empty interval");
    if (*hi == lo && !(lo_closed && hi_closed)) {
      throw Error(ErrorCode::kIntervalError, "empty interval");
    }
  } else {
    hi_closed = false;
  }
  IntervalK i;
  i.lo = lo;
  i.lo_closed = lo_closed;
  i.hi = hi;
  i.hi_closed = hi_closed;
  return i;
}

bool IntervalK::contains(const KNum& d) const {
  if (d < lo || (d == lo && !lo_closed)) return false;
  if (!hi) return true;
  return d < *hi || (d == *hi && hi_closed);
}

std::string IntervalK::str() const {
  if (is_point()) return "{" + lo.str() + "}";
  std::string out = lo_closed ? "[" : "(";
  out += lo.str() + "," + (hi ? hi->str() : "inf");
  out += hi_closed ? "]" : ")";
  return out;
}

// ---------------------------------------------------------------- MTL

namespace {

Mtl make_mtl(MtlNode n) { return std::make_shared<const MtlNode>(std::move(n)); }

}  // namespace

Mtl mtl_true() {
  static const Mtl t = make_mtl(MtlNode{MtlKind::kTrue, "", {}, IntervalK::unbounded(), 0});
  return t;
}
Mtl mtl_false() { return mtl_not(mtl_true()); }
Mtl mtl_prop(const std::string& name) {
  return make_mtl(MtlNode{MtlKind::kProp, name, {}, IntervalK::unbounded(), 0});
}
Mtl mtl_not(Mtl a) {
  return make_mtl(MtlNode{MtlKind::kNot, "", {std::move(a)}, IntervalK::unbounded(), 0});
}
Mtl mtl_and(std::vector<Mtl> kids) {
  if (kids.empty()) return mtl_true();
  if (kids.size() == 1) return kids[0];
  return make_mtl(MtlNode{MtlKind::kAnd, "", std::move(kids), IntervalK::unbounded(), 0});
}
Mtl mtl_or(std::vector<Mtl> kids) {
  if (kids.empty()) return mtl_false();
  if (kids.size() == 1) return kids[0];
  return make_mtl(MtlNode{MtlKind::kOr, "", std::move(kids), IntervalK::unbounded(), 0});
}
Mtl mtl_until(Mtl left, Mtl right, const IntervalK& i) {
  return make_mtl(MtlNode{MtlKind::kUntil, "", {std::move(left), std::move(right)}, i, 0});
}
Mtl mtl_since(Mtl left, Mtl right, const IntervalK& i) {
  return make_mtl(MtlNode{MtlKind::kSince, "", {std::move(left), std::move(right)}, i, 0});
}
Mtl mtl_count(int n, Mtl sub, bool future) {
  if (n < 1) throw Error(ErrorCode::kSyntaxError, "counting threshold must be positive");
  return make_mtl(MtlNode{future ? MtlKind::kCountF : MtlKind::kCountP, "",
                          {std::move(sub)}, IntervalK::unbounded(), n});
}
Mtl mtl_eventually(const IntervalK& i, Mtl a) { return mtl_until(mtl_true(), std::move(a), i); }
Mtl mtl_always(const IntervalK& i, Mtl a) {
  return mtl_not(mtl_eventually(i, mtl_not(std::move(a))));
}
Mtl mtl_once(const IntervalK& i, Mtl a) { return mtl_since(mtl_true(), std::move(a), i); }
Mtl mtl_historically(const IntervalK& i, Mtl a) {
  return mtl_not(mtl_once(i, mtl_not(std::move(a))));
}

bool mtl_equal(const Mtl& a, const Mtl& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->prop != b->prop || a->count != b->count ||
      a->kids.size() != b->kids.size()) {
    return false;
  }
  if ((a->kind == MtlKind::kUntil || a->kind == MtlKind::kSince) &&
      !(a->interval == b->interval)) {
    return false;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!mtl_equal(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

std::size_t mtl_size(const Mtl& a) {
  std::size_t n = 1;
  for (const auto& k : a->kids) n += mtl_size(k);
  return n;
}

void mtl_props(const Mtl& a, std::set<std::string>& out) {
  if (a->kind == MtlKind::kProp) out.insert(a->prop);
  for (const auto& k : a->kids) mtl_props(k, out);
}

namespace {

bool is_true(const Mtl& a) { return a->kind == MtlKind::kTrue; }

std::string mtl_print(const Mtl& a, int ctx);

std::string paren(const std::string& s, bool wrap) { return wrap ? "(" + s + ")" : s; }

std::string unbounded_or(const IntervalK& i) {
  return i == IntervalK::unbounded() ? std::string() : i.str();
}

std::string mtl_print(const Mtl& a, int ctx) {
  switch (a->kind) {
    case MtlKind::kTrue:
      return "true";
    case MtlKind::kProp:
      return a->prop;
    case MtlKind::kNot: {
      const Mtl& k = a->kids[0];
      if (is_true(k)) return "false";
      if ((k->kind == MtlKind::kUntil || k->kind == MtlKind::kSince) &&
          is_true(k->kids[0]) && k->kids[1]->kind == MtlKind::kNot) {
        std::string op = k->kind == MtlKind::kUntil ? "G" : "Gp";
        std::string iv = unbounded_or(k->interval);
        return paren(op + iv + " " + mtl_print(k->kids[1]->kids[0], 4), ctx > 4);
      }
      return paren("!" + mtl_print(k, 4), ctx > 4);
    }
    case MtlKind::kAnd:
    case MtlKind::kOr: {
      std::string sep = a->kind == MtlKind::kAnd ? " & " : " | ";
      int prec = a->kind == MtlKind::kAnd ? 2 : 1;
      std::string out;
      for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (i) out += sep;
        out += mtl_print(a->kids[i], prec + 1);
      }
      return paren(out, ctx > prec);
    }
    case MtlKind::kUntil:
    case MtlKind::kSince: {
      bool fut = a->kind == MtlKind::kUntil;
      std::string iv = unbounded_or(a->interval);
      if (is_true(a->kids[0])) {
        return paren(std::string(fut ? "F" : "Fp") + iv + " " + mtl_print(a->kids[1], 4),
                     ctx > 4);
      }
      return paren(mtl_print(a->kids[0], 4) + (fut ? " U" : " S") + iv + " " +
                       mtl_print(a->kids[1], 4),
                   ctx > 3);
    }
    case MtlKind::kCountF:
    case MtlKind::kCountP:
      return paren(std::string(a->kind == MtlKind::kCountF ? "C>=" : "Cp>=") +
                       std::to_string(a->count) + " " + mtl_print(a->kids[0], 4),
                   ctx > 4);
  }
  return "?";
}

// Shared lexical helpers for both grammars.
class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool at_end() {
    ws();
    return p_ >= s_.size();
  }
  char peek() {
    ws();
    return p_ < s_.size() ? s_[p_] : '\0';
  }
  bool accept(const std::string& tok) {
    ws();
    if (s_.compare(p_, tok.size(), tok) == 0) {
      p_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok, const char* what) {
    if (!accept(tok)) fail(std::string("expected '") + tok + "' in " + what);
  }
  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(p_, msg); }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Raw identifier without the ^constant suffix.
  std::string peek_word() {
    ws();
    std::size_t q = p_;
    if (q >= s_.size() || !ident_start(s_[q])) return "";
    while (q < s_.size() && ident_char(s_[q])) ++q;
    return s_.substr(p_, q - p_);
  }
  std::string word() {
    std::string w = peek_word();
    if (w.empty()) fail("expected an identifier");
    p_ += w.size();
    return w;
  }
  // Identifier with an optional ^constant suffix, canonicalized.
  std::string name() {
    std::string w = word();
    if (p_ < s_.size() && s_[p_] == '^') {
      ++p_;
      auto c = scan_knum(s_, p_);
      if (!c) fail("expected a constant after '^'");
      w += "^" + c->str();
    }
    return w;
  }
  bool accept_word(const std::string& w) {
    if (peek_word() == w) {
      p_ += w.size();
      return true;
    }
    return false;
  }
  KNum constant() {
    auto c = scan_knum(s_, p_);
    if (!c) fail("expected a constant");
    return *c;
  }
  std::optional<KNum> upper() {
    ws();
    if (accept_word("inf")) return std::nullopt;
    return constant();
  }
  // Does an interval start here (as opposed to a parenthesized formula)?
  bool interval_ahead() {
    char c = peek();
    if (c == '{' || c == '[') return true;
    if (c != '(') return false;
    std::size_t q = p_ + 1;
    while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
    if (q >= s_.size()) return false;
    char d = s_[q];
    if (std::isdigit(static_cast<unsigned char>(d)) || d == '-' || d == '+') return true;
    return s_.compare(q, 3, "rt2") == 0 && (q + 3 >= s_.size() || !ident_char(s_[q + 3]));
  }
  IntervalK interval() {
    std::size_t start = p_;
    char c = peek();
    ++p_;
    if (c == '{') {
      KNum v = constant();
      expect("}", "punctual interval");
      return IntervalK::point(v);
    }
    bool lo_closed = c == '[';
    KNum lo = constant();
    expect(",", "interval");
    auto hi = upper();
    bool hi_closed;
    if (accept(")")) {
      hi_closed = false;
    } else if (accept("]")) {
      hi_closed = true;
      if (!hi) fail("infinite endpoint must be open");
    } else {
      fail("expected ')' or ']' closing interval");
    }
    try {
      return IntervalK::make(lo, lo_closed, hi, hi_closed);
    } catch (const Error& e) {
      throw Error(ErrorCode::kIntervalError,
                  "at position " + std::to_string(start) + ": " + e.what());
    }
  }
  std::size_t pos() const { return p_; }
  void set_pos(std::size_t p) { p_ = p; }
  const std::string& text() const { return s_; }

 private:
  const std::string& s_;
  std::size_t p_ = 0;
};

const std::set<std::string> kMtlReserved = {"true", "false", "U", "S", "F", "G",
                                            "Fp", "Gp", "C", "Cp", "rt2", "inf"};

class MtlParser {
 public:
  explicit MtlParser(const std::string& s) : r_(s) {}

  Mtl parse() {
    Mtl f = disj();
    if (!r_.at_end()) r_.fail("unexpected input");
    return f;
  }

 private:
  Mtl disj() {
    std::vector<Mtl> kids{conj()};
    while (r_.accept("|")) kids.push_back(conj());
    return kids.size() == 1 ? kids[0] : mtl_or(kids);
  }
  Mtl conj() {
    std::vector<Mtl> kids{binary()};
    while (r_.accept("&")) kids.push_back(binary());
    return kids.size() == 1 ? kids[0] : mtl_and(kids);
  }
  IntervalK opt_interval() {
    return r_.interval_ahead() ? r_.interval() : IntervalK::unbounded();
  }
  Mtl binary() {
    Mtl left = unary();
    std::string w = r_.peek_word();
    if (w == "U" || w == "S") {
      r_.word();
      IntervalK i = opt_interval();
      Mtl right = binary();
      return w == "U" ? mtl_until(left, right, i) : mtl_since(left, right, i);
    }
    return left;
  }
  Mtl unary() {
    if (r_.accept("!")) return mtl_not(unary());
    if (r_.peek() == '(') {
      r_.accept("(");
      Mtl f = disj();
      r_.expect(")", "parenthesized formula");
      return f;
    }
    std::string w = r_.peek_word();
    if (w.empty()) r_.fail("expected a formula");
    if (w == "true") {
      r_.word();
      return mtl_true();
    }
    if (w == "false") {
      r_.word();
      return mtl_false();
    }
    if (w == "F" || w == "G" || w == "Fp" || w == "Gp") {
      r_.word();
      IntervalK i = opt_interval();
      Mtl a = unary();
      if (w == "F") return mtl_eventually(i, a);
      if (w == "G") return mtl_always(i, a);
      if (w == "Fp") return mtl_once(i, a);
      return mtl_historically(i, a);
    }
    if (w == "C" || w == "Cp") {
      r_.word();
      r_.expect(">=", "counting operator");
      std::size_t at = r_.pos();
      KNum n = r_.constant();
      if (!n.is_rational() || !n.rational_part().is_integer()) {
        throw SyntaxError(at, "counting threshold must be an integer");
      }
      if (n.rational_part().num() < 1) {
        throw SyntaxError(at, "counting threshold must be at least 1");
      }
      return mtl_count(static_cast<int>(n.rational_part().num()), unary(), w == "C");
    }
    if (kMtlReserved.count(w)) r_.fail("unexpected keyword '" + w + "'");
    return mtl_prop(r_.name());
  }

  Reader r_;
};

}  // namespace

std::string mtl_to_string(const Mtl& a) { return mtl_print(a, 0); }

Mtl parse_mtl(const std::string& text) { return MtlParser(text).parse(); }

// ---------------------------------------------------------------- FO

std::string term_str(const Term& t) {
  if (t.offset.is_zero()) return t.var;
  std::string c = t.offset.str();
  return t.var + (c[0] == '-' ? c : "+" + c);
}

namespace {

Fo make_fo(FoNode n) { return std::make_shared<const FoNode>(std::move(n)); }

void append_flat(std::vector<Fo>& out, const Fo& f, FoKind kind) {
  if (f->kind == kind) {
    out.insert(out.end(), f->kids.begin(), f->kids.end());
  } else {
    out.push_back(f);
  }
}

}  // namespace

Fo fo_true() {
  static const Fo t = make_fo(FoNode{FoKind::kTrue, "", {}, {}, {}, "", 1});
  return t;
}
Fo fo_false() { return fo_not(fo_true()); }
Fo fo_pred(const std::string& name, Term t) {
  return make_fo(FoNode{FoKind::kPred, name, std::move(t), {}, {}, "", 1});
}
Fo fo_less(Term a, Term b) {
  return make_fo(FoNode{FoKind::kLess, "", std::move(a), std::move(b), {}, "", 1});
}
Fo fo_equal(Term a, Term b) {
  return make_fo(FoNode{FoKind::kEqual, "", std::move(a), std::move(b), {}, "", 1});
}
Fo fo_not(Fo a) { return make_fo(FoNode{FoKind::kNot, "", {}, {}, {std::move(a)}, "", 1}); }
Fo fo_and(std::vector<Fo> kids) {
  if (kids.empty()) return fo_true();
  if (kids.size() == 1) return kids[0];
  return make_fo(FoNode{FoKind::kAnd, "", {}, {}, std::move(kids), "", 1});
}
Fo fo_or(std::vector<Fo> kids) {
  if (kids.empty()) return fo_false();
  if (kids.size() == 1) return kids[0];
  return make_fo(FoNode{FoKind::kOr, "", {}, {}, std::move(kids), "", 1});
}
Fo fo_implies(Fo a, Fo b) { return fo_or({fo_not(std::move(a)), std::move(b)}); }
Fo fo_exists(const std::string& v, Fo body) {
  return make_fo(FoNode{FoKind::kExists, v, {}, {}, {std::move(body)}, "", 1});
}
Fo fo_forall(const std::string& v, Fo body) {
  return make_fo(FoNode{FoKind::kForall, v, {}, {}, {std::move(body)}, "", 1});
}
Fo fo_exists_in(const std::string& v, Term s, Term t, Fo body) {
  std::vector<Fo> kids{fo_less(std::move(s), var(v)), fo_less(var(v), std::move(t))};
  append_flat(kids, body, FoKind::kAnd);
  return fo_exists(v, make_fo(FoNode{FoKind::kAnd, "", {}, {}, std::move(kids), "", 1}));
}
Fo fo_forall_in(const std::string& v, Term s, Term t, Fo body) {
  std::vector<Fo> kids{fo_not(fo_and({fo_less(std::move(s), var(v)),
                                      fo_less(var(v), std::move(t))}))};
  append_flat(kids, body, FoKind::kOr);
  return fo_forall(v, make_fo(FoNode{FoKind::kOr, "", {}, {}, std::move(kids), "", 1}));
}
Fo fo_guard_exists(const std::string& v, const std::string& anchor, int dir, Fo body) {
  return make_fo(FoNode{FoKind::kGuardExists, v, {}, {}, {std::move(body)}, anchor, dir});
}
Fo fo_punctual(const std::string& v, const std::string& anchor, int dir, Fo body) {
  return make_fo(FoNode{FoKind::kPunctual, v, {}, {}, {std::move(body)}, anchor, dir});
}

namespace {

// strict: only shapes that print and re-parse to the same tree.
std::optional<Guard> match_guard_impl(const Fo& f, bool strict) {
  if (f->kind != FoKind::kExists && f->kind != FoKind::kForall) return std::nullopt;
  const std::string& y = f->name;
  const Fo& b = f->kids[0];
  auto lower = [&](const Fo& a) {
    return a->kind == FoKind::kLess && a->t2.var == y && a->t2.offset.is_zero() &&
           a->t1.var != y;
  };
  auto upper = [&](const Fo& a) {
    return a->kind == FoKind::kLess && a->t1.var == y && a->t1.offset.is_zero() &&
           a->t2.var != y;
  };
  Guard g;
  g.var = y;
  if (f->kind == FoKind::kExists) {
    if (b->kind != FoKind::kAnd || b->kids.size() < 3) return std::nullopt;
    if (!lower(b->kids[0]) || !upper(b->kids[1])) return std::nullopt;
    std::vector<Fo> rest(b->kids.begin() + 2, b->kids.end());
    if (strict && rest.size() == 1 && rest[0]->kind == FoKind::kAnd) return std::nullopt;
    g.lo = b->kids[0]->t1;
    g.hi = b->kids[1]->t2;
    g.body = fo_and(rest);
    return g;
  }
  if (b->kind != FoKind::kOr || b->kids.size() < 2) return std::nullopt;
  const Fo& neg = b->kids[0];
  if (neg->kind != FoKind::kNot) return std::nullopt;
  const Fo& conj = neg->kids[0];
  if (conj->kind != FoKind::kAnd || conj->kids.size() != 2) return std::nullopt;
  if (!lower(conj->kids[0]) || !upper(conj->kids[1])) return std::nullopt;
  std::vector<Fo> rest(b->kids.begin() + 1, b->kids.end());
  if (strict && rest.size() == 1 && rest[0]->kind == FoKind::kOr) return std::nullopt;
  g.lo = conj->kids[0]->t1;
  g.hi = conj->kids[1]->t2;
  g.body = fo_or(rest);
  g.universal = true;
  return g;
}

bool is_quantifier(const Fo& f) {
  return f->kind == FoKind::kExists || f->kind == FoKind::kForall ||
         f->kind == FoKind::kGuardExists || f->kind == FoKind::kPunctual;
}

std::string fo_print(const Fo& f, int ctx) {
  switch (f->kind) {
    case FoKind::kTrue:
      return "true";
    case FoKind::kPred:
      return f->name + "(" + term_str(f->t1) + ")";
    case FoKind::kLess:
      return term_str(f->t1) + " < " + term_str(f->t2);
    case FoKind::kEqual:
      return term_str(f->t1) + " = " + term_str(f->t2);
    case FoKind::kNot:
      if (f->kids[0]->kind == FoKind::kTrue) return "false";
      return "~" + fo_print(f->kids[0], 3);
    case FoKind::kAnd:
    case FoKind::kOr: {
      std::string sep = f->kind == FoKind::kAnd ? " /\\ " : " \\/ ";
      int prec = f->kind == FoKind::kAnd ? 2 : 1;
      std::string out;
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += sep;
        out += fo_print(f->kids[i], prec + 1);
      }
      return ctx > prec ? "(" + out + ")" : out;
    }
    case FoKind::kExists:
    case FoKind::kForall: {
      std::string out;
      if (auto g = match_guard_impl(f, true)) {
        out = std::string(g->universal ? "forall " : "exists ") + g->var + " in (" +
              term_str(g->lo) + "," + term_str(g->hi) + "). " + fo_print(g->body, 0);
      } else {
        out = std::string(f->kind == FoKind::kExists ? "exists " : "forall ") + f->name +
              ". " + fo_print(f->kids[0], 0);
      }
      return ctx > 0 ? "(" + out + ")" : out;
    }
    case FoKind::kGuardExists: {
      std::string range = f->dir > 0 ? f->anchor + "," + f->anchor + "+1"
                                     : f->anchor + "-1," + f->anchor;
      std::string out = "E[" + range + "] " + f->name + ". " + fo_print(f->kids[0], 0);
      return ctx > 0 ? "(" + out + ")" : out;
    }
    case FoKind::kPunctual: {
      std::string out = std::string(f->dir > 0 ? "D1+[" : "D1-[") + f->anchor + "] " +
                        f->name + ". " + fo_print(f->kids[0], 0);
      return ctx > 0 ? "(" + out + ")" : out;
    }
  }
  return "?";
}

const std::set<std::string> kFoReserved = {"true", "false", "exists", "forall", "in",
                                           "rt2", "inf"};

class FoParser {
 public:
  FoParser(const std::string& s, bool pq) : r_(s), pq_(pq) {}

  Fo parse() {
    Fo f = implication();
    if (!r_.at_end()) r_.fail("unexpected input");
    return f;
  }

 private:
  Fo implication() {
    Fo left = disj();
    if (r_.accept("->")) return fo_implies(left, implication());
    return left;
  }
  Fo disj() {
    std::vector<Fo> kids{conj()};
    while (r_.accept("\\/")) kids.push_back(conj());
    return kids.size() == 1 ? kids[0] : fo_or(kids);
  }
  Fo conj() {
    std::vector<Fo> kids{unary()};
    while (r_.accept("/\\")) kids.push_back(unary());
    return kids.size() == 1 ? kids[0] : fo_and(kids);
  }
  Term term() {
    std::string v = r_.word();
    if (kFoReserved.count(v)) r_.fail("expected a variable, found '" + v + "'");
    Term t{v, KNum()};
    char c = r_.peek();
    if (c == '+' || c == '-') {
      std::size_t save = r_.pos();
      std::size_t p = save;
      auto k = scan_knum(r_.text(), p);
      if (k) {
        t.offset = *k;
        r_.set_pos(p);
      } else {
        r_.set_pos(save);
      }
    }
    return t;
  }
  bool punctual_ahead() {
    std::string w = r_.peek_word();
    if (w != "D1") return false;
    std::size_t save = r_.pos();
    r_.word();
    bool ok = false;
    const std::string& s = r_.text();
    std::size_t q = r_.pos();
    if (q < s.size() && (s[q] == '+' || s[q] == '-')) {
      ++q;
      while (q < s.size() && std::isspace(static_cast<unsigned char>(s[q]))) ++q;
      ok = q < s.size() && (s[q] == '[' || Reader::ident_start(s[q]));
    }
    r_.set_pos(save);
    return ok;
  }
  Fo unary() {
    if (r_.accept("~")) return fo_not(unary());
    std::string w = r_.peek_word();
    if (w == "exists" || w == "forall") {
      r_.word();
      std::string v = r_.word();
      if (r_.accept_word("in")) {
        r_.expect("(", "guarded quantifier");
        Term s = term();
        r_.expect(",", "guarded quantifier");
        Term t = term();
        r_.expect(")", "guarded quantifier");
        r_.expect(".", "quantifier");
        Fo body = scoped(v);
        return w == "exists" ? fo_exists_in(v, s, t, body) : fo_forall_in(v, s, t, body);
      }
      r_.expect(".", "quantifier");
      Fo body = scoped(v);
      return w == "exists" ? fo_exists(v, body) : fo_forall(v, body);
    }
    if (pq_ && w == "E" && r_.text().size() > r_.pos() + 1 &&
        r_.text()[r_.pos() + 1] == '[') {
      r_.word();
      r_.expect("[", "metric quantifier");
      std::size_t at = r_.pos();
      Term a = term();
      r_.expect(",", "metric quantifier");
      Term b = term();
      r_.expect("]", "metric quantifier");
      int dir;
      if (a.var != b.var) throw SyntaxError(at, "metric quantifier needs one anchor");
      if (a.offset.is_zero() && b.offset == KNum(1)) {
        dir = 1;
      } else if (a.offset == KNum(-1) && b.offset.is_zero()) {
        dir = -1;
      } else {
        throw SyntaxError(at, "metric quantifier range must be [x,x+1] or [x-1,x]");
      }
      std::string v = r_.word();
      r_.expect(".", "metric quantifier");
      return fo_guard_exists(v, a.var, dir, scoped(v));
    }
    if (pq_ && punctual_ahead()) {
      r_.word();
      int dir = 1;
      if (!r_.accept("+")) {
        r_.expect("-", "punctual quantifier");
        dir = -1;
      }
      // Defaults to the innermost bound variable.
      std::string anchor = binders_.empty() ? "x" : binders_.back();
      if (r_.accept("[")) {
        anchor = r_.word();
        r_.expect("]", "punctual quantifier");
      }
      std::string v = r_.word();
      r_.expect(".", "punctual quantifier");
      return fo_punctual(v, anchor, dir, scoped(v));
    }
    return primary();
  }
  Fo primary() {
    if (r_.accept("(")) {
      Fo f = implication();
      r_.expect(")", "parenthesized formula");
      return f;
    }
    std::string w = r_.peek_word();
    if (w.empty()) r_.fail("expected a formula");
    if (w == "true") {
      r_.word();
      return fo_true();
    }
    if (w == "false") {
      r_.word();
      return fo_false();
    }
    std::size_t save = r_.pos();
    std::string nm = r_.name();
    if (r_.peek() == '(') {
      r_.accept("(");
      Term t = term();
      r_.expect(")", "predicate application");
      return fo_pred(nm, t);
    }
    r_.set_pos(save);
    Term a = term();
    if (r_.accept("<")) return fo_less(a, term());
    if (r_.accept("=")) return fo_equal(a, term());
    if (r_.accept(">")) {
      Term b = term();
      return fo_less(b, a);
    }
    r_.fail("expected '<', '=' or '>' after term");
  }

  Fo scoped(const std::string& v) {
    binders_.push_back(v);
    Fo body = implication();
    binders_.pop_back();
    return body;
  }

  Reader r_;
  bool pq_;
  std::vector<std::string> binders_;
};

}  // namespace

std::optional<Guard> match_guard(const Fo& f) { return match_guard_impl(f, false); }

bool fo_equal_ast(const Fo& a, const Fo& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name || !(a->t1 == b->t1) ||
      !(a->t2 == b->t2) || a->anchor != b->anchor || a->dir != b->dir ||
      a->kids.size() != b->kids.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!fo_equal_ast(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

std::size_t fo_size(const Fo& a) {
  std::size_t n = 1;
  for (const auto& k : a->kids) n += fo_size(k);
  return n;
}

int fo_quantifier_depth(const Fo& a) {
  int d = 0;
  for (const auto& k : a->kids) d = std::max(d, fo_quantifier_depth(k));
  return d + (a->kind == FoKind::kExists || a->kind == FoKind::kForall ||
                      a->kind == FoKind::kGuardExists
                  ? 1
                  : 0);
}

namespace {

void free_vars_rec(const Fo& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto use = [&](const std::string& v) {
    if (!v.empty() && !bound.count(v)) out.insert(v);
  };
  switch (f->kind) {
    case FoKind::kPred:
      use(f->t1.var);
      return;
    case FoKind::kLess:
    case FoKind::kEqual:
      use(f->t1.var);
      use(f->t2.var);
      return;
    case FoKind::kExists:
    case FoKind::kForall:
    case FoKind::kGuardExists:
    case FoKind::kPunctual: {
      if (f->kind == FoKind::kGuardExists || f->kind == FoKind::kPunctual) use(f->anchor);
      bool fresh = bound.insert(f->name).second;
      free_vars_rec(f->kids[0], bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
    default:
      for (const auto& k : f->kids) free_vars_rec(k, bound, out);
  }
}

}  // namespace

std::set<std::string> fo_free_vars(const Fo& a) {
  std::set<std::string> bound, out;
  free_vars_rec(a, bound, out);
  return out;
}

void fo_all_vars(const Fo& f, std::set<std::string>& out) {
  if (!f->t1.var.empty()) out.insert(f->t1.var);
  if (!f->t2.var.empty()) out.insert(f->t2.var);
  if (is_quantifier(f)) out.insert(f->name);
  if (!f->anchor.empty()) out.insert(f->anchor);
  for (const auto& k : f->kids) fo_all_vars(k, out);
}

void fo_preds(const Fo& a, std::set<std::string>& out) {
  if (a->kind == FoKind::kPred) out.insert(a->name);
  for (const auto& k : a->kids) fo_preds(k, out);
}

void fo_constants(const Fo& a, std::set<KNum, std::less<>>& out) {
  if (a->kind == FoKind::kPred || a->kind == FoKind::kLess || a->kind == FoKind::kEqual) {
    out.insert(a->t1.offset);
    if (a->kind != FoKind::kPred) out.insert(a->t2.offset);
  }
  for (const auto& k : a->kids) fo_constants(k, out);
}

std::string fo_to_string(const Fo& a) { return fo_print(a, 0); }

Fo parse_fo(const std::string& text) { return FoParser(text, false).parse(); }
Fo parse_pq2mlo(const std::string& text) { return FoParser(text, true).parse(); }

std::string fresh_var(const std::set<std::string>& used, const std::string& base) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!used.count(c)) return c;
  }
}

namespace {

Fo rebuild(const Fo& f, std::vector<Fo> kids) {
  FoNode n = *f;
  n.kids = std::move(kids);
  return make_fo(std::move(n));
}

}  // namespace

Fo fo_substitute(const Fo& f, const std::string& v, const Term& t) {
  auto sub = [&](const Term& x) {
    if (x.var != v) return x;
    return Term{t.var, x.offset + t.offset};
  };
  switch (f->kind) {
    case FoKind::kTrue:
      return f;
    case FoKind::kPred:
      return fo_pred(f->name, sub(f->t1));
    case FoKind::kLess:
      return fo_less(sub(f->t1), sub(f->t2));
    case FoKind::kEqual:
      return fo_equal(sub(f->t1), sub(f->t2));
    case FoKind::kExists:
    case FoKind::kForall:
    case FoKind::kGuardExists:
    case FoKind::kPunctual: {
      FoNode n = *f;
      if (!n.anchor.empty() && n.anchor == v) {
        if (!t.offset.is_zero()) {
          // Anchors carry no offset; expand the quantifier first.
          return fo_substitute(expand_pq2mlo(f), v, t);
        }
        n.anchor = t.var;
      }
      if (f->name == v) return make_fo(std::move(n));
      if (f->name == t.var && fo_free_vars(f->kids[0]).count(v)) {
        std::set<std::string> used;
        fo_all_vars(f, used);
        used.insert(t.var);
        used.insert(v);
        std::string nv = fresh_var(used, f->name);
        n.kids = {fo_substitute(f->kids[0], f->name, var(nv))};
        n.name = nv;
      }
      n.kids = {fo_substitute(n.kids[0], v, t)};
      return make_fo(std::move(n));
    }
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(fo_substitute(k, v, t));
      return rebuild(f, std::move(kids));
    }
  }
}

Fo expand_pq2mlo(const Fo& f) {
  switch (f->kind) {
    case FoKind::kGuardExists: {
      Fo body = expand_pq2mlo(f->kids[0]);
      const std::string& a = f->anchor;
      if (f->dir > 0) return fo_exists_in(f->name, var(a), var(a, KNum(1)), body);
      return fo_exists_in(f->name, var(a, KNum(-1)), var(a), body);
    }
    case FoKind::kPunctual:
      return fo_substitute(expand_pq2mlo(f->kids[0]), f->name, var(f->anchor, KNum(f->dir)));
    case FoKind::kTrue:
    case FoKind::kPred:
    case FoKind::kLess:
    case FoKind::kEqual:
      return f;
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(expand_pq2mlo(k));
      return rebuild(f, std::move(kids));
    }
  }
}

// ---------------------------------------------------------------- fragments

namespace {

bool bet_rec(const Fo& f, const Term& t1, const Term& t2, std::set<std::string>& bound) {
  switch (f->kind) {
    case FoKind::kTrue:
    case FoKind::kLess:
    case FoKind::kEqual:
      return true;
    case FoKind::kPred:
      return f->t1.offset.is_zero() && bound.count(f->t1.var);
    case FoKind::kNot:
    case FoKind::kAnd:
    case FoKind::kOr:
      for (const auto& k : f->kids) {
        if (!bet_rec(k, t1, t2, bound)) return false;
      }
      return true;
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g || !(g->lo == t1) || !(g->hi == t2)) return false;
      bool fresh = bound.insert(g->var).second;
      bool ok = bet_rec(g->body, t1, t2, bound);
      if (fresh) bound.erase(g->var);
      return ok;
    }
    default:
      return false;
  }
}

bool guarded_rec(const Fo& f) {
  switch (f->kind) {
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      return g && guarded_rec(g->body);
    }
    case FoKind::kGuardExists:
    case FoKind::kPunctual:
      return false;
    default:
      for (const auto& k : f->kids) {
        if (!guarded_rec(k)) return false;
      }
      return true;
  }
}

// Collects the guard intervals of every quantifier inside f.
void collect_guards(const Fo& f, std::vector<std::pair<Term, Term>>& out) {
  if (f->kind == FoKind::kExists || f->kind == FoKind::kForall) {
    if (auto g = match_guard(f)) {
      out.emplace_back(g->lo, g->hi);
      collect_guards(g->body, out);
      return;
    }
  }
  for (const auto& k : f->kids) collect_guards(k, out);
}

bool hif_rec(const Fo& f, std::set<std::string>& outer) {
  switch (f->kind) {
    case FoKind::kTrue:
    case FoKind::kPred:
      return true;
    case FoKind::kLess:
    case FoKind::kEqual:
      return false;
    case FoKind::kNot:
    case FoKind::kAnd:
    case FoKind::kOr:
      for (const auto& k : f->kids) {
        if (!hif_rec(k, outer)) return false;
      }
      return true;
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g) return false;
      const std::string& y = g->var;
      if (outer.count(y)) return false;
      std::vector<std::pair<Term, Term>> inner;
      collect_guards(g->body, inner);
      for (const auto& [s, t] : inner) {
        if (s.var == y && outer.count(t.var)) {
          if (t.var != g->hi.var || !(t.offset == g->hi.offset + s.offset)) return false;
        }
        if (t.var == y && outer.count(s.var)) {
          if (s.var != g->lo.var || !(s.offset == g->lo.offset + t.offset)) return false;
        }
      }
      outer.insert(y);
      bool ok = hif_rec(g->body, outer);
      outer.erase(y);
      return ok;
    }
    default:
      return false;
  }
}

bool pq_rec(const Fo& f) {
  switch (f->kind) {
    case FoKind::kTrue:
      return true;
    case FoKind::kPred:
      return f->t1.offset.is_zero();
    case FoKind::kLess:
    case FoKind::kEqual:
      return f->t1.offset.is_zero() && f->t2.offset.is_zero();
    case FoKind::kGuardExists: {
      auto fv = fo_free_vars(f->kids[0]);
      fv.erase(f->name);
      fv.erase(f->anchor);
      return fv.empty() && pq_rec(f->kids[0]);
    }
    case FoKind::kPunctual: {
      auto fv = fo_free_vars(f->kids[0]);
      fv.erase(f->name);
      return fv.empty() && pq_rec(f->kids[0]);
    }
    default:
      for (const auto& k : f->kids) {
        if (!pq_rec(k)) return false;
      }
      return true;
  }
}

bool mtl_rec(const Mtl& f, const std::function<bool(const MtlNode&)>& ok) {
  if (!ok(*f)) return false;
  for (const auto& k : f->kids) {
    if (!mtl_rec(k, ok)) return false;
  }
  return true;
}

}  // namespace

bool fragment_check(const Fo& f, const FragmentQuery& q) {
  switch (q.which) {
    case Fragment::kBet: {
      std::set<std::string> bound;
      return bet_rec(f, q.t1, q.t2, bound);
    }
    case Fragment::kNBounded: {
      auto fv = fo_free_vars(f);
      if (fv.size() > 1) return false;
      std::string x = fv.empty() ? "x" : *fv.begin();
      std::set<std::string> bound;
      return bet_rec(f, var(x, -q.bound), var(x, q.bound), bound);
    }
    case Fragment::kIntervalGuarded:
      return guarded_rec(f);
    case Fragment::kHif: {
      if (!guarded_rec(f)) return false;
      std::set<std::string> outer = fo_free_vars(f);
      return hif_rec(f, outer);
    }
    case Fragment::kPq2mlo:
      return pq_rec(f);
    case Fragment::kMitl:
    case Fragment::kLtl:
      throw Error(ErrorCode::kWrongLogic, "temporal fragment checked on an FO formula");
  }
  return false;
}

bool fragment_check(const Mtl& f, Fragment which) {
  switch (which) {
    case Fragment::kMitl:
      return mtl_rec(f, [](const MtlNode& n) {
        return !((n.kind == MtlKind::kUntil || n.kind == MtlKind::kSince) &&
                 n.interval.is_point());
      });
    case Fragment::kLtl:
      return mtl_rec(f, [](const MtlNode& n) {
        if (n.kind == MtlKind::kCountF || n.kind == MtlKind::kCountP) return false;
        return !((n.kind == MtlKind::kUntil || n.kind == MtlKind::kSince) &&
                 !(n.interval == IntervalK::unbounded()));
      });
    default:
      throw Error(ErrorCode::kWrongLogic, "first-order fragment checked on an MTL formula");
  }
}

bool has_violation(const Fo& f, const std::string& free) {
  auto bad = [&](const Term& t) {
    return !t.var.empty() && t.var != free && !t.offset.is_zero();
  };
  if (bad(f->t1) || bad(f->t2)) return true;
  for (const auto& k : f->kids) {
    if (has_violation(k, free)) return true;
  }
  return false;
}

// ---------------------------------------------------------------- reach

namespace {

Reach rmax(const Reach& a, const Reach& b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}
Reach radd(const Reach& a, const Reach& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

Reach reach(const Mtl& f, bool future) {
  switch (f->kind) {
    case MtlKind::kTrue:
    case MtlKind::kProp:
      return KNum(0);
    case MtlKind::kNot:
    case MtlKind::kAnd:
    case MtlKind::kOr: {
      Reach r = KNum(0);
      for (const auto& k : f->kids) r = rmax(r, reach(k, future));
      return r;
    }
    case MtlKind::kUntil:
    case MtlKind::kSince: {
      bool same = (f->kind == MtlKind::kUntil) == future;
      Reach a = reach(f->kids[0], future), b = reach(f->kids[1], future);
      if (same) return radd(f->interval.hi, rmax(a, b));
      Reach shifted = b ? Reach(*b - f->interval.lo) : std::nullopt;
      return rmax(a, shifted);
    }
    case MtlKind::kCountF:
    case MtlKind::kCountP: {
      bool same = (f->kind == MtlKind::kCountF) == future;
      Reach a = reach(f->kids[0], future);
      return same ? radd(KNum(1), a) : a;
    }
  }
  return KNum(0);
}

}  // namespace

Reach future_reach(const Mtl& f) { return reach(f, true); }
Reach past_reach(const Mtl& f) { return reach(f, false); }
std::string reach_str(const Reach& r) { return r ? r->str() : "inf"; }

Separation is_separated(const Mtl& f, const KNum& c) {
  Separation s;
  if ((f->kind == MtlKind::kUntil || f->kind == MtlKind::kSince) &&
      f->kids[0]->kind == MtlKind::kTrue && f->interval.is_point()) {
    const KNum& n = f->interval.lo;
    bool fut = f->kind == MtlKind::kUntil;
    Reach r = fut ? past_reach(f->kids[1]) : future_reach(f->kids[1]);
    if (r && *r < n - c) {
      s.kind = fut ? SeparationKind::kFutureDistant : SeparationKind::kPastDistant;
      s.n = n;
      return s;
    }
  }
  bool bounded = mtl_rec(f, [](const MtlNode& n) {
    return !((n.kind == MtlKind::kUntil || n.kind == MtlKind::kSince) &&
             !n.interval.is_bounded());
  });
  s.kind = bounded ? SeparationKind::kBounded : SeparationKind::kNone;
  return s;
}

std::string separation_str(const Separation& s) {
  switch (s.kind) {
    case SeparationKind::kFutureDistant: return "FutureDistant(" + s.n.str() + ")";
    case SeparationKind::kPastDistant: return "PastDistant(" + s.n.str() + ")";
    case SeparationKind::kBounded: return "Bounded";
    case SeparationKind::kNone: return "None";
  }
  return "None";
}

// ---------------------------------------------------------------- decompositions

void Decomposition::validate() const {
  if (c.sign() <= 0) throw Error(ErrorCode::kIntervalError, "decomposition needs c > 0");
  if (psis.empty()) throw Error(ErrorCode::kIndexOutOfRange, "decomposition needs n >= 1");
  if (phis.size() + 1 != psis.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "decomposition with n psis needs n-1 phis");
  }
}

Decomposition parse_decomposition(const std::string& text) {
  Reader r(text);
  if (!r.accept_word("decomp")) r.fail("expected 'decomp'");
  Decomposition d;
  std::map<int, Mtl> phis, psis;
  bool have_c = false;
  while (!r.at_end()) {
    std::string key = r.word();
    r.expect("=", "decomposition field");
    if (key == "c") {
      d.c = r.constant();
      have_c = true;
      continue;
    }
    r.expect("\"", "decomposition field");
    std::size_t start = r.pos();
    std::size_t end = text.find('"', start);
    if (end == std::string::npos) r.fail("unterminated quoted formula");
    Mtl f;
    try {
      f = parse_mtl(text.substr(start, end - start));
    } catch (const SyntaxError& e) {
      throw SyntaxError(start + e.position(), e.what());
    }
    r.set_pos(end + 1);
    std::size_t digits = key.find_first_of("0123456789");
    std::string stem = key.substr(0, digits);
    if (digits == std::string::npos || (stem != "psi" && stem != "phi")) {
      r.fail("unknown decomposition field '" + key + "'");
    }
    int idx = std::stoi(key.substr(digits));
    (stem == "psi" ? psis : phis)[idx] = f;
  }
  if (!have_c) r.fail("decomposition needs c=...");
  int n = static_cast<int>(psis.size());
  for (int i = 1; i <= n; ++i) {
    if (!psis.count(i)) throw Error(ErrorCode::kIndexOutOfRange, "missing psi" + std::to_string(i));
    d.psis.push_back(psis[i]);
  }
  for (int i = 1; i < n; ++i) {
    if (!phis.count(i)) throw Error(ErrorCode::kIndexOutOfRange, "missing phi" + std::to_string(i));
    d.phis.push_back(phis[i]);
  }
  if (static_cast<int>(phis.size()) != std::max(0, n - 1)) {
    throw Error(ErrorCode::kIndexOutOfRange, "phi indices must run from 1 to n-1");
  }
  d.validate();
  return d;
}

std::string decomposition_to_string(const Decomposition& d) {
  std::string out = "decomp c=" + d.c.str();
  for (int i = 1; i <= d.n(); ++i) {
    out += " psi" + std::to_string(i) + "=\"" + mtl_to_string(d.psis[i - 1]) + "\"";
    if (i < d.n()) out += " phi" + std::to_string(i) + "=\"" + mtl_to_string(d.phis[i - 1]) + "\"";
  }
  return out;
}

}  // namespace mtlk
