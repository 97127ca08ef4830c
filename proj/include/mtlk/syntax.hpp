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

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtlk/numeric.hpp"

namespace mtlk {

// Constraint interval for temporal operators; a subset of (0, inf).
struct IntervalK {
  KNum lo;
  bool lo_closed = false;
  std::optional<KNum> hi;  // nullopt: unbounded
  bool hi_closed = false;

  // Throws IntervalError when the invariants fail.
  static IntervalK make(const KNum& lo, bool lo_closed, std::optional<KNum> hi,
                        bool hi_closed);
  static IntervalK open(const KNum& lo, const KNum& hi) {
    return make(lo, false, hi, false);
  }
  static IntervalK point(const KNum& c) { return make(c, true, c, true); }
  static IntervalK unbounded() { return make(KNum(0), false, std::nullopt, false); }

  bool is_bounded() const { return hi.has_value(); }
  bool is_point() const { return hi && *hi == lo; }
  bool contains(const KNum& d) const;
  std::string str() const;
  bool operator==(const IntervalK&) const = default;
};

// ---------------------------------------------------------------- MTL

enum class MtlKind { kTrue, kProp, kNot, kAnd, kOr, kUntil, kSince, kCountF, kCountP };

struct MtlNode;
using Mtl = std::shared_ptr<const MtlNode>;

struct MtlNode {
  MtlKind kind;
  std::string prop;
  std::vector<Mtl> kids;  // Until/Since: {left, right}
  IntervalK interval;
  int count = 0;
};

Mtl mtl_true();
Mtl mtl_false();
Mtl mtl_prop(const std::string& name);
Mtl mtl_not(Mtl a);
Mtl mtl_and(std::vector<Mtl> kids);
Mtl mtl_or(std::vector<Mtl> kids);
Mtl mtl_until(Mtl left, Mtl right, const IntervalK& i);
Mtl mtl_since(Mtl left, Mtl right, const IntervalK& i);
Mtl mtl_count(int n, Mtl sub, bool future);
Mtl mtl_eventually(const IntervalK& i, Mtl a);
Mtl mtl_always(const IntervalK& i, Mtl a);
Mtl mtl_once(const IntervalK& i, Mtl a);
Mtl mtl_historically(const IntervalK& i, Mtl a);

bool mtl_equal(const Mtl& a, const Mtl& b);
std::size_t mtl_size(const Mtl& a);
void mtl_props(const Mtl& a, std::set<std::string>& out);
std::string mtl_to_string(const Mtl& a);
Mtl parse_mtl(const std::string& text);

// ---------------------------------------------------------------- FO

struct Term {
  std::string var;
  KNum offset;
  bool operator==(const Term&) const = default;
};
std::string term_str(const Term& t);

enum class FoKind {
  kTrue,
  kPred,
  kLess,
  kEqual,
  kNot,
  kAnd,
  kOr,
  kExists,
  kForall,
  kGuardExists,  // E[x,x+1] y. / E[x-1,x] y.
  kPunctual,     // D1+ y. / D1- y.
};

struct FoNode;
using Fo = std::shared_ptr<const FoNode>;

struct FoNode {
  FoKind kind;
  std::string name;    // predicate name, or the bound variable
  Term t1, t2;         // Pred uses t1; Less/Equal use both
  std::vector<Fo> kids;
  std::string anchor;  // guarded and punctual quantifiers
  int dir = 1;         // +1 future, -1 past
};

Fo fo_true();
Fo fo_false();
Fo fo_pred(const std::string& name, Term t);
Fo fo_less(Term a, Term b);
Fo fo_equal(Term a, Term b);
Fo fo_not(Fo a);
Fo fo_and(std::vector<Fo> kids);
Fo fo_or(std::vector<Fo> kids);
Fo fo_implies(Fo a, Fo b);
Fo fo_exists(const std::string& var, Fo body);
Fo fo_forall(const std::string& var, Fo body);
// exists y in (s,t). body  ==  exists y. (s < y /\ y < t /\ body)
Fo fo_exists_in(const std::string& var, Term s, Term t, Fo body);
// forall y in (s,t). body  ==  forall y. (~(s < y /\ y < t) \/ body)
Fo fo_forall_in(const std::string& var, Term s, Term t, Fo body);
Fo fo_guard_exists(const std::string& var, const std::string& anchor, int dir, Fo body);
Fo fo_punctual(const std::string& var, const std::string& anchor, int dir, Fo body);

inline Term var(const std::string& v, KNum c = KNum()) { return Term{v, c}; }

struct Guard {
  std::string var;
  Term lo, hi;
  Fo body;
  bool universal = false;
};
// Recognizes the guarded shapes produced by fo_exists_in / fo_forall_in.
std::optional<Guard> match_guard(const Fo& f);

bool fo_equal_ast(const Fo& a, const Fo& b);
std::size_t fo_size(const Fo& a);
int fo_quantifier_depth(const Fo& a);
std::set<std::string> fo_free_vars(const Fo& a);
void fo_preds(const Fo& a, std::set<std::string>& out);
void fo_constants(const Fo& a, std::set<KNum, std::less<>>& out);
std::string fo_to_string(const Fo& a);
Fo parse_fo(const std::string& text);
Fo parse_pq2mlo(const std::string& text);
// Substitutes a term for free occurrences of a variable (capture-free for
// the generated inputs this library manipulates).
Fo fo_substitute(const Fo& f, const std::string& v, const Term& t);
// Rewrites guarded and punctual quantifiers into plain FO.
Fo expand_pq2mlo(const Fo& f);
std::string fresh_var(const std::set<std::string>& used, const std::string& base);
void fo_all_vars(const Fo& f, std::set<std::string>& out);

// ---------------------------------------------------------------- checks

enum class Fragment { kBet, kNBounded, kIntervalGuarded, kHif, kMitl, kPq2mlo, kLtl };

struct FragmentQuery {
  Fragment which;
  Term t1, t2;  // Bet bounds
  KNum bound;   // N for n_bounded
};

bool fragment_check(const Fo& f, const FragmentQuery& q);
bool fragment_check(const Mtl& f, Fragment which);
bool has_violation(const Fo& f, const std::string& free);

// Reach value; nullopt stands for +inf.
using Reach = std::optional<KNum>;
Reach future_reach(const Mtl& f);
Reach past_reach(const Mtl& f);
std::string reach_str(const Reach& r);

enum class SeparationKind { kFutureDistant, kPastDistant, kBounded, kNone };
struct Separation {
  SeparationKind kind = SeparationKind::kNone;
  KNum n;
};
Separation is_separated(const Mtl& f, const KNum& c);
std::string separation_str(const Separation& s);

// Decomposition formula: psi_1 phi_1 psi_2 ... phi_{n-1} psi_n over (x, x+c).
struct Decomposition {
  KNum c;
  std::vector<Mtl> phis;
  std::vector<Mtl> psis;
  int n() const { return static_cast<int>(psis.size()); }
  void validate() const;
};
Decomposition parse_decomposition(const std::string& text);
std::string decomposition_to_string(const Decomposition& d);

}  // namespace mtlk
