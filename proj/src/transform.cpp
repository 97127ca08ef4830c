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

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

#include "mtlk/error.hpp"
#include "mtlk/eval.hpp"

namespace mtlk {

namespace {

std::int64_t knum_floor(const KNum& x) {
  auto n = static_cast<std::int64_t>(std::floor(x.approx()));
  while (KNum(n) > x) --n;
  while (KNum(n + 1) <= x) ++n;
  return n;
}

std::int64_t knum_ceil(const KNum& x) { return -knum_floor(-x); }

Term shift(const Term& t, const KNum& c) { return Term{t.var, t.offset + c}; }

bool is_true(const Fo& f) { return f->kind == FoKind::kTrue; }
bool is_false(const Fo& f) {
  return f->kind == FoKind::kNot && f->kids[0]->kind == FoKind::kTrue;
}

Fo mk_not(const Fo& f) {
  if (f->kind == FoKind::kNot) return f->kids[0];
  return fo_not(f);
}

Fo mk_junction(std::vector<Fo> in, bool conj) {
  std::vector<Fo> out;
  FoKind kind = conj ? FoKind::kAnd : FoKind::kOr;
  for (auto& k : in) {
    if (conj ? is_true(k) : is_false(k)) continue;
    if (conj ? is_false(k) : is_true(k)) return k;
    if (k->kind == kind) {
      out.insert(out.end(), k->kids.begin(), k->kids.end());
    } else {
      out.push_back(std::move(k));
    }
  }
  return conj ? fo_and(std::move(out)) : fo_or(std::move(out));
}
Fo mk_and(std::vector<Fo> in) { return mk_junction(std::move(in), true); }
Fo mk_or(std::vector<Fo> in) { return mk_junction(std::move(in), false); }

Fo rebuild(const Fo& f, std::vector<Fo> kids) {
  switch (f->kind) {
    case FoKind::kNot:
      return mk_not(kids[0]);
    case FoKind::kAnd:
      return mk_and(std::move(kids));
    case FoKind::kOr:
      return mk_or(std::move(kids));
    default: {
      FoNode n = *f;
      n.kids = std::move(kids);
      return std::make_shared<const FoNode>(std::move(n));
    }
  }
}

// Guarded existential with constant folding of an empty body.
Fo exists_in(const std::string& y, const Term& s, const Term& t, const Fo& body) {
  if (is_false(body)) return fo_false();
  if (s.var == t.var && t.offset <= s.offset) return fo_false();
  return fo_exists_in(y, s, t, body);
}

std::string name_base(const std::string& name) { return name.substr(0, name.find('^')); }

KNum name_shift(const std::string& name) {
  auto caret = name.find('^');
  return caret == std::string::npos ? KNum() : parse_knum(name.substr(caret + 1));
}

Fo rename_apart(const Fo& f, std::set<std::string>& used) {
  switch (f->kind) {
    case FoKind::kExists:
    case FoKind::kForall:
    case FoKind::kGuardExists:
    case FoKind::kPunctual: {
      FoNode n = *f;
      Fo body = f->kids[0];
      if (used.count(f->name)) {
        n.name = fresh_var(used, f->name);
        body = fo_substitute(body, f->name, var(n.name));
      }
      used.insert(n.name);
      n.kids = {rename_apart(body, used)};
      return std::make_shared<const FoNode>(std::move(n));
    }
    case FoKind::kTrue:
    case FoKind::kPred:
    case FoKind::kLess:
    case FoKind::kEqual:
      return f;
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(rename_apart(k, used));
      FoNode n = *f;
      n.kids = std::move(kids);
      return std::make_shared<const FoNode>(std::move(n));
    }
  }
}

// ---------------------------------------------------------------- retarget

// Rewrites f, in which y ranges over an interval whose `upper` (or lower)
// end moved from old_end to new_end, so that every nested interval
// anchored at the old end is anchored at the new one.
Fo retarget(const Fo& f, const std::string& y, bool upper, const Term& old_end,
            const Term& new_end);

Fo split_guard(const std::string& z, const Term& s, const Term& t, const Fo& body,
               const Term& u) {
  return mk_or({exists_in(z, s, u, retarget(body, z, true, t, u)),
                fo_substitute(body, z, u),
                exists_in(z, u, t, retarget(body, z, false, s, u))});
}

Fo retarget(const Fo& f, const std::string& y, bool upper, const Term& old_end,
            const Term& new_end) {
  switch (f->kind) {
    case FoKind::kTrue:
    case FoKind::kPred:
    case FoKind::kLess:
    case FoKind::kEqual:
      return f;
    case FoKind::kNot:
    case FoKind::kAnd:
    case FoKind::kOr: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(retarget(k, y, upper, old_end, new_end));
      return rebuild(f, std::move(kids));
    }
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g) throw Error(ErrorCode::kNotHif, "unguarded quantifier over " + f->name);
      Fo inner = g->universal ? mk_not(g->body) : g->body;
      inner = retarget(inner, y, upper, old_end, new_end);
      Fo out;
      if (upper && g->lo.var == y && g->hi.var == old_end.var &&
          g->hi.offset == old_end.offset + g->lo.offset) {
        out = split_guard(g->var, g->lo, g->hi, inner, shift(new_end, g->lo.offset));
      } else if (!upper && g->hi.var == y && g->lo.var == old_end.var &&
                 g->lo.offset == old_end.offset + g->hi.offset) {
        out = split_guard(g->var, g->lo, g->hi, inner, shift(new_end, g->hi.offset));
      } else {
        out = exists_in(g->var, g->lo, g->hi, inner);
      }
      return g->universal ? mk_not(out) : out;
    }
    default:
      throw Error(ErrorCode::kNotHif, "unexpected quantifier form");
  }
}

// ---------------------------------------------------------------- constraints

enum class Rel { kLt, kLe, kEq };

// u rel v + d
struct Con {
  std::string u, v;
  KNum d;
  Rel rel;
  std::string key() const {
    const char* r = rel == Rel::kLt ? "<" : (rel == Rel::kLe ? "<=" : "=");
    return u + r + v + "+" + d.str();
  }
};

// nullopt: constant true; a constant false yields an unsatisfiable marker.
struct Normalized {
  bool constant = false;
  bool value = true;
  Con con;
};

Normalized normalize(const Term& a, Rel rel, const Term& b) {
  KNum d = b.offset - a.offset;
  if (a.var == b.var) {
    bool v = rel == Rel::kLt ? d.sign() > 0 : (rel == Rel::kLe ? d.sign() >= 0 : d.is_zero());
    return {true, v, {}};
  }
  Con c{a.var, b.var, d, rel};
  if (rel == Rel::kEq && c.v < c.u) c = Con{b.var, a.var, -d, rel};
  return {false, true, c};
}

Term lhs(const Con& c) { return var(c.u); }
Term rhs(const Con& c) { return var(c.v, c.d); }

struct Bound {
  KNum w;
  bool strict = false;
};
bool tighter(const Bound& a, const Bound& b) {
  return a.w < b.w || (a.w == b.w && a.strict && !b.strict);
}

bool consistent(const std::vector<Con>& cons) {
  std::vector<std::string> vars;
  auto idx = [&](const std::string& v) {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it != vars.end()) return static_cast<std::size_t>(it - vars.begin());
    vars.push_back(v);
    return vars.size() - 1;
  };
  for (const auto& c : cons) {
    idx(c.u);
    idx(c.v);
  }
  std::size_t n = vars.size();
  std::vector<std::vector<std::optional<Bound>>> dist(n, std::vector<std::optional<Bound>>(n));
  // dist[a][b] bounds b - a from above.
  auto edge = [&](std::size_t a, std::size_t b, Bound w) {
    if (!dist[a][b] || tighter(w, *dist[a][b])) dist[a][b] = w;
  };
  for (const auto& c : cons) {
    std::size_t u = idx(c.u), v = idx(c.v);
    // u - v rel d
    edge(v, u, {c.d, c.rel == Rel::kLt});
    if (c.rel == Rel::kEq) edge(u, v, {-c.d, false});
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!dist[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!dist[k][j]) continue;
        Bound s{dist[i][k]->w + dist[k][j]->w, dist[i][k]->strict || dist[k][j]->strict};
        if (!dist[i][j] || tighter(s, *dist[i][j])) dist[i][j] = s;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] && (dist[i][i]->w.sign() < 0 ||
                       (dist[i][i]->w.is_zero() && dist[i][i]->strict))) {
      return false;
    }
  }
  return true;
}

struct Case {
  std::vector<Con> k;
  Fo phi;
};
using Cases = std::vector<Case>;

// Adds a normalized constraint; false when it is constantly false.
bool add_con(std::vector<Con>& k, const Term& a, Rel rel, const Term& b) {
  Normalized n = normalize(a, rel, b);
  if (n.constant) return n.value;
  k.push_back(n.con);
  return true;
}

void canonicalize(std::vector<Con>& k) {
  std::sort(k.begin(), k.end(), [](const Con& a, const Con& b) { return a.key() < b.key(); });
  k.erase(std::unique(k.begin(), k.end(),
                      [](const Con& a, const Con& b) { return a.key() == b.key(); }),
          k.end());
}

std::string cons_key(const std::vector<Con>& k) {
  std::string s;
  for (const auto& c : k) s += c.key() + ";";
  return s;
}

std::vector<std::vector<Con>> negations(const Con& c);

// Drops constraints implied by the others.
void prune(std::vector<Con>& k) {
  for (std::size_t i = 0; i < k.size();) {
    std::vector<Con> rest = k;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    bool implied = true;
    for (const auto& alt : negations(k[i])) {
      std::vector<Con> probe = rest;
      probe.insert(probe.end(), alt.begin(), alt.end());
      if (consistent(probe)) {
        implied = false;
        break;
      }
    }
    if (implied) {
      k = std::move(rest);
    } else {
      ++i;
    }
  }
}

Cases merge(const Cases& in) {
  std::vector<std::string> order;
  std::map<std::string, Case> by_key;
  for (const auto& c : in) {
    if (is_false(c.phi)) continue;
    Case cc = c;
    canonicalize(cc.k);
    prune(cc.k);
    std::string key = cons_key(cc.k);
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      order.push_back(key);
      by_key.emplace(key, std::move(cc));
    } else {
      it->second.phi = mk_or({it->second.phi, cc.phi});
    }
  }
  Cases out;
  for (const auto& key : order) {
    const Case& c = by_key.at(key);
    if (c.k.empty() && is_true(c.phi)) return {c};
    out.push_back(c);
  }
  return out;
}

Cases product(const Cases& a, const Cases& b) {
  Cases out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Case c{x.k, mk_and({x.phi, y.phi})};
      if (is_false(c.phi)) continue;
      c.k.insert(c.k.end(), y.k.begin(), y.k.end());
      canonicalize(c.k);
      if (!y.k.empty() && !x.k.empty() && !consistent(c.k)) continue;
      out.push_back(std::move(c));
    }
  }
  return merge(out);
}

std::vector<std::vector<Con>> negations(const Con& c) {
  // not (u < v+d)  ==  v + d <= u  ==  v <= u - d
  switch (c.rel) {
    case Rel::kLt:
      return {{Con{c.v, c.u, -c.d, Rel::kLe}}};
    case Rel::kLe:
      return {{Con{c.v, c.u, -c.d, Rel::kLt}}};
    case Rel::kEq:
      return {{Con{c.u, c.v, c.d, Rel::kLt}}, {Con{c.v, c.u, -c.d, Rel::kLt}}};
  }
  return {};
}

// ---------------------------------------------------------------- normalizer

void collect_guards(const Fo& f, std::vector<Guard>& out) {
  switch (f->kind) {
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g) return;
      out.push_back(*g);
      collect_guards(g->body, out);
      return;
    }
    default:
      for (const auto& k : f->kids) collect_guards(k, out);
  }
}

const FoNode* find_self_guard(const Fo& f, const std::string& y) {
  switch (f->kind) {
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g) return nullptr;
      if (g->lo.var == y && g->hi.var == y) return f.get();
      return find_self_guard(g->body, y);
    }
    default:
      for (const auto& k : f->kids) {
        if (auto p = find_self_guard(k, y)) return p;
      }
      return nullptr;
  }
}

Fo replace_node(const Fo& f, const FoNode* target, const Fo& repl) {
  if (f.get() == target) return repl;
  if (f->kids.empty()) return f;
  bool changed = false;
  std::vector<Fo> kids;
  for (const auto& k : f->kids) {
    kids.push_back(replace_node(k, target, repl));
    changed = changed || kids.back() != k;
  }
  return changed ? rebuild(f, std::move(kids)) : f;
}

// Replaces guards touching y and the term t (as an offset of y) using `fn`.
Fo map_y_guards(const Fo& f, const std::string& y,
                const std::function<std::optional<Fo>(const Guard&, const Fo&)>& fn) {
  switch (f->kind) {
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g) return f;
      Fo inner = g->universal ? mk_not(g->body) : g->body;
      inner = map_y_guards(inner, y, fn);
      Guard h = *g;
      h.body = inner;
      auto r = fn(h, inner);
      Fo out = r ? *r : exists_in(g->var, g->lo, g->hi, inner);
      return g->universal ? mk_not(out) : out;
    }
    case FoKind::kTrue:
    case FoKind::kPred:
    case FoKind::kLess:
    case FoKind::kEqual:
      return f;
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(map_y_guards(k, y, fn));
      return rebuild(f, std::move(kids));
    }
  }
}

class HifNormalizer {
 public:
  HifNormalizer(std::string anchor, KNum bound, const HifOptions& opts)
      : anchor_(std::move(anchor)), bound_(std::move(bound)), opts_(opts) {}

  Cases nf(const Fo& f, std::vector<std::string>& scope) {
    switch (f->kind) {
      case FoKind::kTrue:
      case FoKind::kPred:
        return {Case{{}, f}};
      case FoKind::kLess:
      case FoKind::kEqual: {
        Case c{{}, fo_true()};
        if (!add_con(c.k, f->t1, f->kind == FoKind::kLess ? Rel::kLt : Rel::kEq, f->t2)) {
          return {};
        }
        return {c};
      }
      case FoKind::kNot:
        return negate(nf(f->kids[0], scope));
      case FoKind::kAnd: {
        Cases acc{Case{{}, fo_true()}};
        for (const auto& k : f->kids) {
          acc = product(acc, nf(k, scope));
          if (acc.empty()) break;
        }
        return acc;
      }
      case FoKind::kOr: {
        Cases acc;
        for (const auto& k : f->kids) {
          Cases c = nf(k, scope);
          acc.insert(acc.end(), c.begin(), c.end());
        }
        return merge(acc);
      }
      case FoKind::kExists:
      case FoKind::kForall: {
        bool univ = f->kind == FoKind::kForall;
        scope.push_back(f->name);
        Cases body = nf(f->kids[0], scope);
        scope.pop_back();
        if (univ) body = negate(body);
        Cases out = eliminate(f->name, body, scope);
        return univ ? negate(out) : out;
      }
      default:
        throw Error(ErrorCode::kNotInFragment, "expand guarded quantifiers first");
    }
  }

 private:
  void check_size(const Cases& cs) {
    std::size_t total = 0;
    for (const auto& c : cs) total += fo_size(c.phi);
    if (total > opts_.max_nodes) {
      throw Error(ErrorCode::kDepthExceeded,
                  "normal form exceeds " + std::to_string(opts_.max_nodes) + " nodes");
    }
  }

  Cases negate(const Cases& cases) {
    Cases acc{Case{{}, fo_true()}};
    for (const auto& c : cases) {
      Cases options;
      if (!is_true(c.phi)) options.push_back(Case{{}, mk_not(c.phi)});
      for (const auto& con : c.k) {
        for (auto& alt : negations(con)) options.push_back(Case{alt, fo_true()});
      }
      acc = product(acc, options);
      if (acc.empty()) break;
      check_size(acc);
    }
    return acc;
  }

  Cases eliminate(const std::string& y, const Cases& cases,
                  const std::vector<std::string>& scope) {
    Cases out;
    std::vector<Case> work(cases.rbegin(), cases.rend());
    while (!work.empty()) {
      Case c = std::move(work.back());
      work.pop_back();
      step(y, std::move(c), scope, work, out);
      if (out.size() % 64 == 0) check_size(out);
    }
    out = merge(out);
    check_size(out);
    return out;
  }

  static bool mentions(const Con& c, const std::string& y) { return c.u == y || c.v == y; }

  // Substitutes y := t everywhere; false when a constraint becomes false.
  static bool substitute(Case& c, const std::string& y, const Term& t) {
    std::vector<Con> k;
    for (const auto& con : c.k) {
      Term a = lhs(con), b = rhs(con);
      if (a.var == y) a = shift(t, a.offset);
      if (b.var == y) b = shift(t, b.offset);
      if (!add_con(k, a, con.rel, b)) return false;
    }
    c.k = std::move(k);
    canonicalize(c.k);
    c.phi = fo_substitute(c.phi, y, t);
    return consistent(c.k);
  }

  void step(const std::string& y, Case c, const std::vector<std::string>& scope,
            std::vector<Case>& work, Cases& out) {
    // Equalities eliminate y by substitution.
    for (std::size_t i = 0; i < c.k.size(); ++i) {
      const Con& con = c.k[i];
      if (con.rel != Rel::kEq || !mentions(con, y)) continue;
      Term t = con.u == y ? rhs(con) : Term{con.u, -con.d};
      c.k.erase(c.k.begin() + static_cast<std::ptrdiff_t>(i));
      if (substitute(c, y, t) && !is_false(c.phi)) out.push_back(std::move(c));
      return;
    }
    // Intervals (y+a, y+b) are split at the unique anchor lattice point
    // inside them, or y sits on the lattice.
    if (const FoNode* node = find_self_guard(c.phi, y)) {
      auto g = match_guard(Fo(c.phi, node));
      KNum a = g->lo.offset, b = g->hi.offset;
      if (b <= a) {
        Fo empty = g->universal ? fo_true() : fo_false();
        c.phi = replace_node(c.phi, node, empty);
        work.push_back(std::move(c));
        return;
      }
      KNum d = b - a;
      std::int64_t lo_n = knum_floor((a - bound_) / d) + 1;
      std::int64_t hi_n = knum_ceil((b + bound_) / d) - 1;
      for (std::int64_t n = lo_n; n <= hi_n; ++n) {
        Term u = var(anchor_, KNum(n) * d);
        Case on = c;
        if (add_con(on.k, var(y, a), Rel::kEq, u)) work.push_back(std::move(on));
        Case in = c;
        if (!add_con(in.k, var(y, a), Rel::kLt, u) || !add_con(in.k, u, Rel::kLt, var(y, b))) {
          continue;
        }
        canonicalize(in.k);
        if (!consistent(in.k)) continue;
        Fo inner = g->universal ? mk_not(g->body) : g->body;
        Fo split = split_guard(g->var, g->lo, g->hi, inner, u);
        in.phi = replace_node(c.phi, node, g->universal ? mk_not(split) : split);
        work.push_back(std::move(in));
      }
      return;
    }
    // Terms compared with y, with the relations still allowed.
    enum : int { kBelow = 1, kEqual = 2, kAbove = 4 };  // y < t, y = t, y > t
    std::vector<Term> terms;
    std::vector<int> allowed;
    auto slot = [&](const Term& t) -> int& {
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] == t) return allowed[i];
      }
      terms.push_back(t);
      allowed.push_back(kBelow | kEqual | kAbove);
      return allowed.back();
    };
    std::vector<Con> others;
    for (const auto& con : c.k) {
      if (!mentions(con, y)) {
        others.push_back(con);
        continue;
      }
      if (con.u == y) {
        slot(rhs(con)) &= con.rel == Rel::kLt ? kBelow : (kBelow | kEqual);
      } else {
        slot(Term{con.u, -con.d}) &= con.rel == Rel::kLt ? kAbove : (kAbove | kEqual);
      }
    }
    std::set<std::string> free(scope.begin(), scope.end());
    std::vector<Guard> guards;
    collect_guards(c.phi, guards);
    for (const auto& g : guards) {
      if (g.lo.var == y && g.hi.var != y && free.count(g.hi.var)) {
        slot(shift(g.hi, -g.lo.offset));
      } else if (g.hi.var == y && g.lo.var != y && free.count(g.lo.var)) {
        slot(shift(g.lo, -g.hi.offset));
      }
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!(allowed[i] & kEqual)) continue;
      Case on = c;
      add_con(on.k, var(y), Rel::kEq, terms[i]);
      canonicalize(on.k);
      if (consistent(on.k)) work.push_back(std::move(on));
    }
    std::vector<int> choice(terms.size(), 0);
    std::function<void(std::size_t, std::vector<Con>&)> assign =
        [&](std::size_t i, std::vector<Con>& sys) {
          if (i == terms.size()) {
            close(y, c, terms, choice, others, sys, out);
            return;
          }
          for (int rel : {kBelow, kAbove}) {
            if (!(allowed[i] & rel)) continue;
            std::vector<Con> next = sys;
            if (rel == kBelow) {
              add_con(next, var(y), Rel::kLt, terms[i]);
            } else {
              add_con(next, terms[i], Rel::kLt, var(y));
            }
            if (!consistent(next)) continue;
            choice[i] = rel;
            assign(i + 1, next);
          }
        };
    std::vector<Con> sys = c.k;
    assign(0, sys);
  }

  // y is strictly between its greatest lower and least upper bound.
  void close(const std::string& y, const Case& c, const std::vector<Term>& terms,
             const std::vector<int>& choice, const std::vector<Con>& others,
             const std::vector<Con>& sys, Cases& out) {
    std::vector<std::size_t> lower, upper;
    for (std::size_t i = 0; i < terms.size(); ++i) (choice[i] == 1 ? upper : lower).push_back(i);
    if (lower.empty() || upper.empty()) {
      throw Error(ErrorCode::kNotBounded, "quantified variable " + y + " is not bounded");
    }
    // tie[i]: terms[i] equals the chosen bound.
    std::vector<bool> tie(terms.size(), false);
    for (std::size_t li : lower) {
      std::vector<Con> s1 = sys;
      std::function<void(std::size_t, std::vector<Con>&)> pick_lower =
          [&](std::size_t j, std::vector<Con>& s) {
            if (j == lower.size()) {
              for (std::size_t ri : upper) {
                std::vector<Con> s2 = s;
                std::function<void(std::size_t, std::vector<Con>&)> pick_upper =
                    [&](std::size_t m, std::vector<Con>& t) {
                      if (m == upper.size()) {
                        emit(y, c, terms, choice, tie, li, ri, others, t, out);
                        return;
                      }
                      std::size_t o = upper[m];
                      if (o == ri) {
                        pick_upper(m + 1, t);
                        return;
                      }
                      for (bool eq : {false, true}) {
                        if (eq && m < static_cast<std::size_t>(
                                          std::find(upper.begin(), upper.end(), ri) -
                                          upper.begin())) {
                          continue;
                        }
                        std::vector<Con> nt = t;
                        if (!add_con(nt, terms[ri], eq ? Rel::kEq : Rel::kLt, terms[o])) continue;
                        if (!consistent(nt)) continue;
                        tie[o] = eq;
                        pick_upper(m + 1, nt);
                        tie[o] = false;
                      }
                    };
                pick_upper(0, s2);
              }
              return;
            }
            std::size_t o = lower[j];
            if (o == li) {
              pick_lower(j + 1, s);
              return;
            }
            for (bool eq : {false, true}) {
              if (eq && j < static_cast<std::size_t>(
                                std::find(lower.begin(), lower.end(), li) - lower.begin())) {
                continue;
              }
              std::vector<Con> ns = s;
              if (!add_con(ns, terms[o], eq ? Rel::kEq : Rel::kLt, terms[li])) continue;
              if (!consistent(ns)) continue;
              tie[o] = eq;
              pick_lower(j + 1, ns);
              tie[o] = false;
            }
          };
      pick_lower(0, s1);
    }
  }

  void emit(const std::string& y, const Case& c, const std::vector<Term>& terms,
            const std::vector<int>& choice, const std::vector<bool>& tie, std::size_t li,
            std::size_t ri, const std::vector<Con>& others, const std::vector<Con>& sys,
            Cases& out) {
    const Term& l = terms[li];
    const Term& r = terms[ri];
    Case res;
    res.k = others;
    for (const auto& con : sys) {
      if (!mentions(con, y)) res.k.push_back(con);
    }
    if (!add_con(res.k, l, Rel::kLt, r)) return;
    canonicalize(res.k);
    auto index_of = [&](const Term& t) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] == t) return i;
      }
      return std::nullopt;
    };
    // Empty intervals vanish and tied endpoints are renamed.
    Fo phi = map_y_guards(c.phi, y, [&](const Guard& g, const Fo& inner) -> std::optional<Fo> {
      if (g.lo.var == y && g.hi.var != y) {
        auto i = index_of(shift(g.hi, -g.lo.offset));
        if (!i) return std::nullopt;
        if (choice[*i] != 1) return fo_false();
        if (tie[*i]) return exists_in(g.var, g.lo, shift(r, g.lo.offset), inner);
      } else if (g.hi.var == y && g.lo.var != y) {
        auto i = index_of(shift(g.lo, -g.hi.offset));
        if (!i) return std::nullopt;
        if (choice[*i] == 1) return fo_false();
        if (tie[*i]) return exists_in(g.var, shift(l, g.hi.offset), g.hi, inner);
      }
      return std::nullopt;
    });
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i == li || i == ri || tie[i]) continue;
      if (choice[i] == 1) {
        phi = retarget(phi, y, true, terms[i], r);
      } else {
        phi = retarget(phi, y, false, terms[i], l);
      }
    }
    // l < r is already part of the constraints.
    res.phi = fo_free_vars(phi).count(y) ? exists_in(y, l, r, phi) : phi;
    if (!is_false(res.phi)) out.push_back(std::move(res));
  }

  std::string anchor_;
  KNum bound_;
  HifOptions opts_;
};

}  // namespace

// ---------------------------------------------------------------- scaling

std::string shifted_name(const std::string& name, const KNum& c) {
  KNum total = name_shift(name) + c;
  std::string base = name_base(name);
  return total.is_zero() ? base : base + "^" + total.str();
}

Fo scale_fo(const Fo& f, const KNum& eps) {
  if (eps.sign() <= 0) throw Error(ErrorCode::kNonPositiveScale, "scale factor " + eps.str());
  auto sc = [&](const Term& t) { return Term{t.var, t.offset * eps}; };
  FoNode n = *f;
  switch (f->kind) {
    case FoKind::kPred:
      n.t1 = sc(f->t1);
      if (n.name.find('^') != std::string::npos) {
        n.name = shifted_name(name_base(n.name), name_shift(n.name) * eps);
      }
      break;
    case FoKind::kLess:
    case FoKind::kEqual:
      n.t1 = sc(f->t1);
      n.t2 = sc(f->t2);
      break;
    case FoKind::kGuardExists:
    case FoKind::kPunctual:
      if (!(eps == KNum(1))) {
        // Unit-length guards only scale through their plain-FO meaning.
        return scale_fo(expand_pq2mlo(f), eps);
      }
      break;
    default:
      break;
  }
  n.kids.clear();
  for (const auto& k : f->kids) n.kids.push_back(scale_fo(k, eps));
  return std::make_shared<const FoNode>(std::move(n));
}

Mtl scale_mtl(const Mtl& f, const KNum& eps) {
  if (eps.sign() <= 0) throw Error(ErrorCode::kNonPositiveScale, "scale factor " + eps.str());
  std::vector<Mtl> kids;
  for (const auto& k : f->kids) kids.push_back(scale_mtl(k, eps));
  auto iv = [&] {
    const IntervalK& i = f->interval;
    std::optional<KNum> hi;
    if (i.hi) hi = *i.hi * eps;
    return IntervalK::make(i.lo * eps, i.lo_closed, hi, i.hi_closed);
  };
  switch (f->kind) {
    case MtlKind::kTrue:
      return f;
    case MtlKind::kProp:
      if (f->prop.find('^') == std::string::npos) return f;
      return mtl_prop(shifted_name(name_base(f->prop), name_shift(f->prop) * eps));
    case MtlKind::kNot:
      return mtl_not(kids[0]);
    case MtlKind::kAnd:
      return mtl_and(kids);
    case MtlKind::kOr:
      return mtl_or(kids);
    case MtlKind::kUntil:
      return mtl_until(kids[0], kids[1], iv());
    case MtlKind::kSince:
      return mtl_since(kids[0], kids[1], iv());
    case MtlKind::kCountF:
    case MtlKind::kCountP:
      if (!(eps == KNum(1))) {
        throw Error(ErrorCode::kWrongLogic, "counting window is fixed; cannot scale by " +
                                                eps.str());
      }
      return mtl_count(f->count, kids[0], f->kind == MtlKind::kCountF);
  }
  return f;
}

// ---------------------------------------------------------------- HIF

QuantifierSplit split_quantifier(const Fo& f, const Term& u) {
  auto g = match_guard(f);
  if (!g || g->universal || !fragment_check(f, {Fragment::kHif, {}, {}, {}})) {
    throw Error(ErrorCode::kNotHif, "expected exists y in (s,t). body in HIF");
  }
  QuantifierSplit s;
  s.guard_lo = g->lo;
  s.guard_hi = g->hi;
  s.less = exists_in(g->var, g->lo, u, retarget(g->body, g->var, true, g->hi, u));
  s.equal = fo_substitute(g->body, g->var, u);
  s.greater = exists_in(g->var, u, g->hi, retarget(g->body, g->var, false, g->lo, u));
  return s;
}

Fo hif_normalize(const Fo& f, const KNum& bound, const HifOptions& opts) {
  auto fv = fo_free_vars(f);
  if (fv.size() > 1) throw Error(ErrorCode::kNotBounded, "more than one free variable");
  std::string x = fv.empty() ? "x" : *fv.begin();
  if (fragment_check(f, {Fragment::kHif, {}, {}, {}})) return f;
  if (!fragment_check(f, {Fragment::kNBounded, {}, {}, bound})) {
    throw Error(ErrorCode::kNotBounded, "formula is not " + bound.str() + "-bounded");
  }
  std::set<std::string> used{x};
  Fo g = rename_apart(expand_pq2mlo(f), used);
  HifNormalizer norm(x, bound, opts);
  std::vector<std::string> scope{x};
  Cases cases = norm.nf(g, scope);
  std::vector<Fo> parts;
  for (const auto& c : cases) {
    if (!c.k.empty()) throw Error(ErrorCode::kNotBounded, "residual constraint " + c.k[0].key());
    parts.push_back(c.phi);
  }
  return mk_or(parts);
}

namespace {

bool violates(const Term& t, const std::string& free) {
  return t.var != free && !t.offset.is_zero();
}

Fo deviolate(const Fo& f, const std::string& free) {
  switch (f->kind) {
    case FoKind::kTrue:
      return f;
    case FoKind::kPred:
      if (!violates(f->t1, free)) return f;
      return fo_pred(shifted_name(f->name, f->t1.offset), var(f->t1.var));
    case FoKind::kLess:
    case FoKind::kEqual:
      if (violates(f->t1, free) || violates(f->t2, free)) {
        throw Error(ErrorCode::kNotHif, "order atom outside an interval guard");
      }
      return f;
    case FoKind::kExists:
    case FoKind::kForall: {
      auto g = match_guard(f);
      if (!g) throw Error(ErrorCode::kNotHif, "unguarded quantifier over " + f->name);
      KNum c;
      if (violates(g->lo, free)) {
        c = g->lo.offset;
      } else if (violates(g->hi, free)) {
        c = g->hi.offset;
      }
      Term lo = shift(g->lo, -c), hi = shift(g->hi, -c);
      if (violates(lo, free) || violates(hi, free)) {
        throw Error(ErrorCode::kNotHif, "guard ends of " + g->var + " carry unequal shifts");
      }
      Fo body = c.is_zero() ? g->body : fo_substitute(g->body, g->var, var(g->var, c));
      body = deviolate(body, free);
      return g->universal ? fo_forall_in(g->var, lo, hi, body) : fo_exists_in(g->var, lo, hi, body);
    }
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(deviolate(k, free));
      FoNode n = *f;
      n.kids = std::move(kids);
      return std::make_shared<const FoNode>(std::move(n));
    }
  }
}

}  // namespace

Fo remove_violations(const Fo& f, const std::string& free) {
  if (!fragment_check(f, {Fragment::kIntervalGuarded, {}, {}, {}})) {
    throw Error(ErrorCode::kNotHif, "input is not interval-guarded");
  }
  return deviolate(f, free);
}

// ---------------------------------------------------------------- markers

namespace {

void collect_anchor_shifts(const Fo& f, const std::string& x, std::set<KNum, std::less<>>& out) {
  if (f->kind == FoKind::kEqual) {
    const Term& a = f->t1;
    const Term& b = f->t2;
    if (a.var == x && b.var != x && !(a.offset - b.offset).is_zero()) {
      out.insert(a.offset - b.offset);
    }
    if (b.var == x && a.var != x && !(b.offset - a.offset).is_zero()) {
      out.insert(b.offset - a.offset);
    }
  }
  for (const auto& k : f->kids) collect_anchor_shifts(k, x, out);
}

std::string fresh_pred(const std::set<std::string>& taken, std::string name) {
  while (taken.count(name)) name += "_";
  return name;
}

}  // namespace

MarkerContext make_marker_context(const Fo& f, const std::string& anchor) {
  MarkerContext ctx;
  ctx.anchor = anchor;
  std::set<std::string> preds;
  fo_preds(f, preds);
  std::set<KNum, std::less<>> shifts;
  collect_anchor_shifts(f, anchor, shifts);
  ctx.shifts.assign(shifts.begin(), shifts.end());
  ctx.eq = fresh_pred(preds, "P_eq");
  ctx.lt = fresh_pred(preds, "P_lt");
  ctx.gt = fresh_pred(preds, "P_gt");
  for (std::size_t i = 0; i < ctx.shifts.size(); ++i) {
    ctx.at.push_back(fresh_pred(preds, "F_" + std::to_string(i + 1)));
  }
  return ctx;
}

Fo marker_substitute(const Fo& f, const MarkerContext& ctx) {
  const std::string& x = ctx.anchor;
  auto shape = [&](const std::string& why) {
    return Error(ErrorCode::kUnexpectedAtomShape, why + " in " + fo_to_string(f));
  };
  switch (f->kind) {
    case FoKind::kPred:
      if (f->t1.var == x) throw shape("predicate applied to the anchor");
      return f;
    case FoKind::kLess: {
      const Term& a = f->t1;
      const Term& b = f->t2;
      if (a.var == x && b.var == x) throw shape("anchor compared with itself");
      if (a.var == x) return fo_pred(ctx.lt, shift(b, -a.offset));
      if (b.var == x) return fo_pred(ctx.gt, shift(a, -b.offset));
      return f;
    }
    case FoKind::kEqual: {
      const Term& a = f->t1;
      const Term& b = f->t2;
      if (a.var == x && b.var == x) throw shape("anchor compared with itself");
      if (a.var != x && b.var != x) return f;
      const Term& x_side = a.var == x ? a : b;
      const Term& z = a.var == x ? b : a;
      KNum c = x_side.offset - z.offset;
      if (c.is_zero()) return fo_pred(ctx.eq, var(z.var));
      auto it = std::find(ctx.shifts.begin(), ctx.shifts.end(), c);
      if (it == ctx.shifts.end()) throw shape("shift " + c.str() + " missing from the context");
      return fo_pred(ctx.at[static_cast<std::size_t>(it - ctx.shifts.begin())], var(z.var));
    }
    case FoKind::kTrue:
      return f;
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(marker_substitute(k, ctx));
      FoNode n = *f;
      n.kids = std::move(kids);
      return std::make_shared<const FoNode>(std::move(n));
    }
  }
}

FiniteSignal marker_signal(const FiniteSignal& f, const KNum& v, const MarkerContext& ctx) {
  std::vector<std::pair<std::string, SatSet>> sets{
      {ctx.eq, SatSet::point(v)},
      {ctx.lt, SatSet::interval(v, false, std::nullopt, false)},
      {ctx.gt, SatSet::interval(std::nullopt, false, v, false)}};
  for (std::size_t i = 0; i < ctx.shifts.size(); ++i) {
    sets.emplace_back(ctx.at[i], SatSet::point(v + ctx.shifts[i]));
  }
  return extend_signal(f, sets);
}

Fo marker_unsubstitute(const Fo& f, const MarkerContext& ctx) {
  const std::string& x = ctx.anchor;
  switch (f->kind) {
    case FoKind::kPred: {
      if (f->name == ctx.lt) return fo_less(var(x), f->t1);
      if (f->name == ctx.gt) return fo_less(f->t1, var(x));
      if (f->name == ctx.eq) return fo_equal(var(x), f->t1);
      for (std::size_t i = 0; i < ctx.at.size(); ++i) {
        if (f->name == ctx.at[i]) return fo_equal(var(x, ctx.shifts[i]), f->t1);
      }
      return f;
    }
    case FoKind::kTrue:
    case FoKind::kLess:
    case FoKind::kEqual:
      return f;
    default: {
      std::vector<Fo> kids;
      for (const auto& k : f->kids) kids.push_back(marker_unsubstitute(k, ctx));
      FoNode n = *f;
      n.kids = std::move(kids);
      return std::make_shared<const FoNode>(std::move(n));
    }
  }
}

// ---------------------------------------------------------------- lifting

FiniteSignal extend_signal(const FiniteSignal& f,
                           const std::vector<std::pair<std::string, SatSet>>& sets) {
  FiniteSignal g;
  g.props = f.props;
  for (const auto& [name, s] : sets) {
    if (std::find(g.props.begin(), g.props.end(), name) != g.props.end()) {
      throw Error(ErrorCode::kNameClash, "proposition " + name + " already exists");
    }
    g.props.push_back(name);
  }
  std::vector<KNum> pts = f.breakpoints;
  for (const auto& [name, s] : sets) {
    auto e = s.endpoints();
    pts.insert(pts.end(), e.begin(), e.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) pts.push_back(KNum());
  auto val = [&](const KNum& r) {
    Valuation v = value_at(f, r);
    for (const auto& [name, s] : sets) {
      if (s.contains(r)) v.insert(name);
    }
    return v;
  };
  g.breakpoints = pts;
  g.left_tail = val(pts.front() - KNum(1));
  g.right_tail = val(pts.back() + KNum(1));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    g.at.push_back(val(pts[i]));
    if (i + 1 < pts.size()) g.between.push_back(val(midpoint(pts[i], pts[i + 1])));
  }
  return g;
}

FiniteSignal predicate_lift(const FiniteSignal& f,
                            const std::vector<std::pair<std::string, Mtl>>& named) {
  std::vector<std::pair<std::string, SatSet>> sets;
  std::set<std::string> seen;
  for (const auto& [name, m] : named) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kNameClash, "name " + name + " lifted twice");
    }
    sets.emplace_back(name, mtl_sat(m, f));
  }
  return extend_signal(f, sets);
}

// ---------------------------------------------------------------- decompositions

std::string phi_name(int i) { return "Phi" + std::to_string(i); }
std::string psi_name(int i) { return "Psi" + std::to_string(i); }

FiniteSignal lift_decomposition(const FiniteSignal& f, const Decomposition& d) {
  std::vector<std::pair<std::string, Mtl>> named;
  for (int i = 1; i <= d.n(); ++i) named.emplace_back(psi_name(i), d.psis[i - 1]);
  for (int i = 1; i < d.n(); ++i) named.emplace_back(phi_name(i), d.phis[i - 1]);
  return predicate_lift(f, named);
}

namespace {

// Chain x = z_0 < z_1 < ... < z_k = end with the given point and segment
// predicates; the segment variable is `seg`.
Fo chain(const std::string& x, const Term& end, int k, int phis, const std::string& prefix) {
  std::vector<Term> z{var(x)};
  for (int i = 1; i < k; ++i) z.push_back(var(prefix + std::to_string(i)));
  z.push_back(end);
  std::vector<Fo> parts;
  for (int i = 1; i <= k; ++i) parts.push_back(fo_less(z[i - 1], z[i]));
  for (int i = 1; i <= phis; ++i) parts.push_back(fo_pred(phi_name(i), z[i]));
  for (int i = 1; i <= k; ++i) {
    parts.push_back(fo_forall_in("u", z[i - 1], z[i], fo_pred(psi_name(i), var("u"))));
  }
  Fo body = fo_and(parts);
  for (int i = k - 1; i >= 1; --i) body = fo_exists(prefix + std::to_string(i), body);
  return body;
}

}  // namespace

Fo decomposition_to_fo(const Decomposition& d) {
  d.validate();
  if (d.n() == 1) {
    return fo_forall_in("u", var("x"), var("x", d.c), fo_pred(psi_name(1), var("u")));
  }
  Fo f = chain("x", var("x", d.c), d.n(), d.n() - 1, "z");
  // The outer order atom x < z_1 is kept; x < x+c is constant.
  return f;
}

Fo build_delta_j(const Decomposition& d, int j, const std::string& x, const std::string& y) {
  d.validate();
  if (j < 1 || j > 2 * d.n() - 1) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "j = " + std::to_string(j) + " outside 1.." + std::to_string(2 * d.n() - 1));
  }
  int k = (j + 1) / 2;
  return chain(x, var(y), k, j / 2, "z");
}

Fo build_delta_prime(const Decomposition& d) {
  d.validate();
  if (!(d.c == KNum(1))) {
    throw Error(ErrorCode::kWrongBound, "punctual rewriting needs c = 1, got " + d.c.str());
  }
  std::vector<Fo> cover;
  for (int i = 1; i <= 2 * d.n() - 1; ++i) cover.push_back(build_delta_j(d, i, "x", "v"));
  Fo first = fo_not(fo_guard_exists("v", "x", 1, fo_not(fo_or(cover))));
  Fo whole = build_delta_j(d, 2 * d.n() - 1, "v", "y");
  Fo second = fo_punctual("y", "x", 1, fo_guard_exists("v", "y", -1, whole));
  return fo_and({first, second});
}

namespace {

std::optional<IntervalK> window(KNum lo, bool lo_closed, std::optional<KNum> hi,
                                bool hi_closed) {
  if (lo.sign() <= 0) {
    lo = KNum(0);
    lo_closed = false;
  }
  if (hi) {
    if (*hi < lo) return std::nullopt;
    if (*hi == lo && !(lo_closed && hi_closed)) return std::nullopt;
  }
  return IntervalK::make(lo, lo_closed, hi, hi_closed);
}

Mtl box(const std::optional<IntervalK>& i, Mtl a) {
  return i ? mtl_always(*i, std::move(a)) : mtl_true();
}
Mtl until(Mtl a, Mtl b, const std::optional<IntervalK>& i) {
  return i ? mtl_until(std::move(a), std::move(b), *i) : mtl_false();
}
Mtl since(Mtl a, Mtl b, const std::optional<IntervalK>& i) {
  return i ? mtl_since(std::move(a), std::move(b), *i) : mtl_false();
}

class DecompTranslator {
 public:
  DecompTranslator(const KGroup& g) : g_(g) {}

  Mtl translate(const Decomposition& d, std::optional<KNum> inherited, bool explicit_nu) {
    int n = d.n();
    if (n == 1) return box(window(KNum(0), false, d.c, false), d.psis[0]);
    KNum bound = d.c / KNum(2 * n);
    KNum nu;
    if (explicit_nu) {
      nu = *inherited;
      if (nu.sign() <= 0 || bound < nu || !group_contains(g_, nu)) {
        throw Error(ErrorCode::kInvalidNu, "nu = " + nu.str() + " must lie in " + g_.str() +
                                               " and in (0, " + bound.str() + "]");
      }
    } else if (inherited && *inherited <= bound) {
      nu = *inherited;
    } else {
      try {
        nu = pick_nu(g_, bound);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoSuchElement) throw;
        throw Error(ErrorCode::kNuUnavailable, "no element of " + g_.str() + " in (0, " +
                                                   bound.str() + "] for window " + d.c.str() +
                                                   " with " + std::to_string(n) + " segments");
      }
    }
    std::string key = decomposition_to_string(d) + "|" + nu.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::int64_t r = knum_ceil(d.c / nu);
    const auto& phi = d.phis;
    const auto& psi = d.psis;
    std::optional<IntervalK> step = window(KNum(0), false, nu, false);
    std::vector<Mtl> parts;
    for (std::int64_t k = 0; k < r; ++k) {
      KNum lo = KNum(k) * nu, hi = KNum(k + 1) * nu;
      if (2 * k < r) {
        Mtl inner = mtl_and({phi[n - 2], box(step, psi[n - 1])});
        for (int i = n - 2; i >= 1; --i) {
          inner = mtl_and({phi[i - 1], until(psi[i], inner, step)});
        }
        parts.push_back(mtl_and({until(psi[0], inner, window(lo, true, hi, false)),
                                 box(window(hi, true, d.c, false), psi[n - 1])}));
      } else {
        Mtl inner = mtl_and({phi[0], mtl_historically(*step, psi[0])});
        for (int i = 2; i <= n - 1; ++i) {
          inner = mtl_and({phi[i - 1], since(psi[i - 1], inner, step)});
        }
        Mtl back = since(psi[n - 1], inner, window(d.c - hi, false, d.c - lo, true));
        parts.push_back(mtl_and({mtl_eventually(IntervalK::point(d.c), back),
                                 box(window(KNum(0), false, lo, false), psi[0])}));
      }
    }
    for (std::int64_t k = 1; k < r; ++k) {
      KNum at = KNum(k) * nu;
      for (int l = 1; l <= n - 2; ++l) {
        Mtl sigma = translate(sub(d, at, 1, l), nu, false);
        Mtl tau_l = translate(sub(d, d.c - at, l + 1, n - 1), nu, false);
        Mtl tau_next = translate(sub(d, d.c - at, l + 2, n - 1), nu, false);
        Mtl rest = mtl_or({mtl_and({psi[l], tau_l}), mtl_and({phi[l], tau_next})});
        parts.push_back(mtl_and({sigma, mtl_eventually(IntervalK::point(at), rest)}));
      }
    }
    Mtl out = mtl_or(parts);
    memo_.emplace(key, out);
    return out;
  }

 private:
  // Sub-decomposition with psi_first..psi_{last+1} and phi_first..phi_last.
  static Decomposition sub(const Decomposition& d, const KNum& c, int first, int last) {
    Decomposition s;
    s.c = c;
    for (int i = first; i <= last; ++i) s.phis.push_back(d.phis[i - 1]);
    for (int i = first; i <= last + 1; ++i) s.psis.push_back(d.psis[i - 1]);
    return s;
  }

  const KGroup& g_;
  std::unordered_map<std::string, Mtl> memo_;
};

}  // namespace

Mtl translate_decomposition(const Decomposition& d, const KGroup& g, std::optional<KNum> nu) {
  d.validate();
  if (!group_contains(g, d.c)) {
    throw Error(ErrorCode::kWrongBound, "window " + d.c.str() + " is not in " + g.str());
  }
  DecompTranslator t(g);
  return t.translate(d, nu, nu.has_value() && d.n() > 1);
}

// ---------------------------------------------------------------- punctual

namespace {

bool has_punctual(const Fo& f) {
  if (f->kind == FoKind::kPunctual) return true;
  return std::any_of(f->kids.begin(), f->kids.end(), has_punctual);
}

Mtl mtl_replace_prop(const Mtl& m, const std::map<std::string, Mtl>& repl) {
  if (m->kind == MtlKind::kProp) {
    auto it = repl.find(m->prop);
    return it == repl.end() ? m : it->second;
  }
  if (m->kids.empty()) return m;
  MtlNode n = *m;
  n.kids.clear();
  for (const auto& k : m->kids) n.kids.push_back(mtl_replace_prop(k, repl));
  return std::make_shared<const MtlNode>(std::move(n));
}

class PunctualRewriter {
 public:
  explicit PunctualRewriter(const CoreTranslation& core) : core_(core) {}

  Mtl translate(const Fo& f, const std::string& v) {
    switch (f->kind) {
      case FoKind::kPunctual: {
        if (f->anchor != v) break;
        Mtl inner = translate(f->kids[0], f->name);
        IntervalK one = IntervalK::point(KNum(1));
        return f->dir > 0 ? mtl_eventually(one, inner) : mtl_once(one, inner);
      }
      case FoKind::kTrue:
        return mtl_true();
      case FoKind::kPred:
        if (f->t1 == var(v)) return mtl_prop(f->name);
        break;
      case FoKind::kNot:
      case FoKind::kAnd:
      case FoKind::kOr: {
        if (!has_punctual(f)) break;
        std::vector<Mtl> kids;
        for (const auto& k : f->kids) kids.push_back(translate(k, v));
        if (f->kind == FoKind::kNot) return mtl_not(kids[0]);
        return f->kind == FoKind::kAnd ? mtl_and(kids) : mtl_or(kids);
      }
      default:
        break;
    }
    std::map<std::string, Mtl> holes;
    Fo core_form = abstract(f, holes);
    std::string key = fo_to_string(v == "x" ? core_form : fo_substitute(core_form, v, var("x")));
    auto it = core_.find(key);
    if (it == core_.end()) {
      throw Error(ErrorCode::kMissingCoreTranslation, "no core translation for " + key);
    }
    return mtl_replace_prop(it->second, holes);
  }

 private:
  // Replaces maximal punctual subformulas by fresh predicates.
  Fo abstract(const Fo& f, std::map<std::string, Mtl>& holes) {
    if (f->kind == FoKind::kPunctual) {
      std::string name = "Pu" + std::to_string(++counter_);
      holes.emplace(name, translate(f, f->anchor));
      return fo_pred(name, var(f->anchor));
    }
    if (f->kids.empty() || !has_punctual(f)) return f;
    FoNode n = *f;
    n.kids.clear();
    for (const auto& k : f->kids) n.kids.push_back(abstract(k, holes));
    return std::make_shared<const FoNode>(std::move(n));
  }

  const CoreTranslation& core_;
  int counter_ = 0;
};

}  // namespace

Mtl punctual_rewrite(const Fo& f, const CoreTranslation& core) {
  if (!fragment_check(f, {Fragment::kPq2mlo, {}, {}, {}})) {
    throw Error(ErrorCode::kNotInFragment, "not a PQ2MLO formula");
  }
  auto fv = fo_free_vars(f);
  std::string v = fv.empty() ? "x" : *fv.begin();
  PunctualRewriter rw(core);
  return rw.translate(f, v);
}

// ---------------------------------------------------------------- separation

Mtl k_limit(const Mtl& f, LimitSide side, const KNum& nu, const std::optional<KGroup>& g) {
  if (nu.sign() <= 0 || (g && !group_contains(*g, nu))) {
    throw Error(ErrorCode::kInvalidNu, "nu = " + nu.str() + " must be a positive group element");
  }
  IntervalK i = IntervalK::open(KNum(0), nu);
  if (side == LimitSide::kPlus) return mtl_not(mtl_until(mtl_not(f), mtl_true(), i));
  return mtl_not(mtl_since(mtl_not(f), mtl_true(), i));
}

KNum separation_n_choice(const Mtl& theta, const KNum& c, const KGroup& g) {
  Reach pr = past_reach(theta);
  if (!pr) throw Error(ErrorCode::kInfiniteReach, "past reach of the formula is infinite");
  return least_above(g, *pr + c);
}

}  // namespace mtlk
