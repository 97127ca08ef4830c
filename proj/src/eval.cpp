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

#include "mtlk/eval.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "mtlk/error.hpp"

namespace mtlk {

SatSet atom_set(const FiniteSignal& f, const std::string& name) {
  if (std::find(f.props.begin(), f.props.end(), name) != f.props.end()) {
    return prop_set(f, name);
  }
  auto caret = name.find('^');
  if (caret != std::string::npos) {
    KNum c = parse_knum(name.substr(caret + 1));
    return atom_set(f, name.substr(0, caret)).shift(-c);
  }
  return prop_set(f, name);
}

SatSet assemble_pointwise(std::vector<KNum> critical,
                          const std::function<bool(const KNum&)>& pred, int extra) {
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  if (critical.empty()) return pred(KNum(0)) ? SatSet::all() : SatSet();
  if (extra > 0) {
    Rng rng(critical.size());
    std::vector<KNum> fine = critical;
    auto frac = [&] { return KNum(Rational(1 + static_cast<std::int64_t>(rng.below(999)), 1000)); };
    for (int k = 0; k < extra; ++k) {
      fine.push_back(critical.front() - KNum(4) * frac());
      fine.push_back(critical.back() + KNum(4) * frac());
      for (std::size_t i = 0; i + 1 < critical.size(); ++i) {
        fine.push_back(critical[i] + (critical[i + 1] - critical[i]) * frac());
      }
    }
    return assemble_pointwise(std::move(fine), pred, 0);
  }
  std::vector<Component> comps;
  if (pred(critical.front() - KNum(1))) {
    comps.push_back({std::nullopt, false, critical.front(), false});
  }
  for (std::size_t i = 0; i < critical.size(); ++i) {
    const KNum& p = critical[i];
    if (pred(p)) comps.push_back({p, true, p, true});
    if (i + 1 < critical.size()) {
      if (pred(midpoint(p, critical[i + 1]))) {
        comps.push_back({p, false, critical[i + 1], false});
      }
    } else if (pred(p + KNum(1))) {
      comps.push_back({p, false, std::nullopt, false});
    }
  }
  return SatSet::from_components(comps);
}

// ---------------------------------------------------------------- MTL

namespace {

SatSet future_until(const SatSet& s1, const SatSet& s2, const IntervalK& iv,
                    const UntilOptions& opts) {
  auto join = [&](bool a, bool b) { return opts.closed_endpoint_bug ? (a || b) : (a && b); };
  SatSet out;
  for (const auto& j : s1.components()) {
    if (j.is_point()) continue;
    SatSet w = s2.intersect(SatSet::interval(j.lo, false, j.hi, j.hi.has_value()));
    SatSet from = SatSet::interval(j.lo, true, std::nullopt, false);
    for (const auto& k : w.components()) {
      std::optional<KNum> lo, hi;
      bool lc = false, hc = false;
      if (k.lo && iv.hi) {
        lo = *k.lo - *iv.hi;
        lc = join(k.lo_closed, iv.hi_closed);
      }
      if (k.hi) {
        hi = *k.hi - iv.lo;
        hc = join(k.hi_closed, iv.lo_closed);
      }
      out = out.unite(SatSet::interval(lo, lc, hi, hc).intersect(from));
    }
  }
  return out;
}

SatSet future_count(const SatSet& s, int n) {
  std::vector<KNum> critical;
  for (const auto& e : s.endpoints()) {
    critical.push_back(e);
    critical.push_back(e - KNum(1));
  }
  return assemble_pointwise(critical, [&](const KNum& r) {
    SatSet win = s.intersect(SatSet::interval(r, false, r + KNum(1), false));
    int points = 0;
    for (const auto& c : win.components()) {
      if (!c.is_point()) return true;
      ++points;
    }
    return points >= n;
  });
}

}  // namespace

SatSet until_op(const SatSet& s1, const SatSet& s2, const IntervalK& i, bool future,
                const UntilOptions& opts) {
  if (future) return future_until(s1, s2, i, opts);
  return future_until(s1.reflect(), s2.reflect(), i, opts).reflect();
}

SatSet counting_op(const SatSet& s, int n, bool future) {
  if (future) return future_count(s, n);
  return future_count(s.reflect(), n).reflect();
}

namespace {

class MtlEvaluator {
 public:
  MtlEvaluator(const FiniteSignal& sig, const UntilOptions& opts) : sig_(sig), opts_(opts) {}

  const SatSet& sat(const Mtl& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    SatSet s = compute(f);
    return memo_.emplace(f.get(), std::move(s)).first->second;
  }

 private:
  SatSet compute(const Mtl& f) {
    switch (f->kind) {
      case MtlKind::kTrue:
        return SatSet::all();
      case MtlKind::kProp:
        return atom_set(sig_, f->prop);
      case MtlKind::kNot:
        return sat(f->kids[0]).complement();
      case MtlKind::kAnd: {
        SatSet s = SatSet::all();
        for (const auto& k : f->kids) s = s.intersect(sat(k));
        return s;
      }
      case MtlKind::kOr: {
        SatSet s;
        for (const auto& k : f->kids) s = s.unite(sat(k));
        return s;
      }
      case MtlKind::kUntil:
      case MtlKind::kSince:
        return until_op(sat(f->kids[0]), sat(f->kids[1]), f->interval,
                        f->kind == MtlKind::kUntil, opts_);
      case MtlKind::kCountF:
      case MtlKind::kCountP:
        return counting_op(sat(f->kids[0]), f->count, f->kind == MtlKind::kCountF);
    }
    return SatSet();
  }

  const FiniteSignal& sig_;
  UntilOptions opts_;
  std::unordered_map<const MtlNode*, SatSet> memo_;
};

// Independent pointwise semantics. Temporal nodes search witnesses t among
// the endpoints and midpoints of the relevant sets.
class MtlOracle {
 public:
  explicit MtlOracle(const FiniteSignal& sig) : sig_(sig) {}

  bool holds(const Mtl& f, const KNum& r) {
    switch (f->kind) {
      case MtlKind::kTrue:
        return true;
      case MtlKind::kProp:
        return atom_set(sig_, f->prop).contains(r);
      case MtlKind::kNot:
        return !holds(f->kids[0], r);
      case MtlKind::kAnd:
        for (const auto& k : f->kids) {
          if (!holds(k, r)) return false;
        }
        return true;
      case MtlKind::kOr:
        for (const auto& k : f->kids) {
          if (holds(k, r)) return true;
        }
        return false;
      case MtlKind::kUntil:
      case MtlKind::kSince:
        return temporal_at(sat(f->kids[0]), sat(f->kids[1]), f->interval,
                           f->kind == MtlKind::kUntil, r);
      case MtlKind::kCountF:
      case MtlKind::kCountP: {
        auto n = naive_window_count(sat(f->kids[0]), r, f->kind == MtlKind::kCountF);
        return !n || *n >= f->count;
      }
    }
    return false;
  }

  const SatSet& sat(const Mtl& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    std::vector<KNum> critical;
    std::set<KNum> ends;
    for (const auto& k : f->kids) {
      for (const auto& e : sat(k).endpoints()) ends.insert(e);
    }
    int dir = 1;
    std::vector<KNum> shifts{KNum(0)};
    if (f->kind == MtlKind::kUntil || f->kind == MtlKind::kSince) {
      dir = f->kind == MtlKind::kUntil ? 1 : -1;
      shifts.push_back(f->interval.lo);
      if (f->interval.hi) shifts.push_back(*f->interval.hi);
    } else if (f->kind == MtlKind::kCountF || f->kind == MtlKind::kCountP) {
      dir = f->kind == MtlKind::kCountF ? 1 : -1;
      shifts.push_back(KNum(1));
    } else if (f->kind == MtlKind::kProp) {
      for (const auto& e : atom_set(sig_, f->prop).endpoints()) ends.insert(e);
    }
    for (const auto& e : ends) {
      for (const auto& s : shifts) critical.push_back(dir > 0 ? e - s : e + s);
    }
    SatSet s = assemble_pointwise(critical, [&](const KNum& r) { return holds(f, r); });
    return memo_.emplace(f.get(), std::move(s)).first->second;
  }

 private:
  static bool temporal_at(const SatSet& s1, const SatSet& s2, const IntervalK& iv,
                          bool future, const KNum& r) {
    std::optional<KNum> a, b;
    bool ac, bc;
    if (future) {
      a = r + iv.lo;
      ac = iv.lo_closed;
      if (iv.hi) b = r + *iv.hi;
      bc = iv.hi_closed;
    } else {
      if (iv.hi) a = r - *iv.hi;
      ac = iv.hi_closed;
      b = r - iv.lo;
      bc = iv.lo_closed;
    }
    SatSet w = s2.intersect(SatSet::interval(a, ac, b, bc));
    if (w.is_empty()) return false;
    std::set<KNum> pts{r};
    for (const auto& e : w.endpoints()) pts.insert(e);
    for (const auto& e : s1.endpoints()) pts.insert(e);
    std::vector<KNum> v(pts.begin(), pts.end());
    std::vector<KNum> cands = v;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) cands.push_back(midpoint(v[i], v[i + 1]));
    cands.push_back(v.front() - KNum(1));
    cands.push_back(v.back() + KNum(1));
    for (const auto& t : cands) {
      if (!w.contains(t)) continue;
      SatSet between = future ? SatSet::interval(r, false, t, false)
                              : SatSet::interval(t, false, r, false);
      if ((future ? r < t : t < r) && between.subset_of(s1)) return true;
    }
    return false;
  }

  const FiniteSignal& sig_;
  std::unordered_map<const MtlNode*, SatSet> memo_;
};

}  // namespace

SatSet mtl_sat(const Mtl& f, const FiniteSignal& sig, const UntilOptions& opts) {
  MtlEvaluator ev(sig, opts);
  return ev.sat(f);
}

bool mtl_holds_oracle(const Mtl& f, const FiniteSignal& sig, const KNum& r) {
  MtlOracle o(sig);
  return o.holds(f, r);
}

SatSet mtl_sat_oracle(const Mtl& f, const FiniteSignal& sig) {
  MtlOracle o(sig);
  return o.sat(f);
}

std::optional<int> naive_window_count(const SatSet& s, const KNum& r, bool future) {
  KNum a = future ? r : r - KNum(1);
  KNum b = future ? r + KNum(1) : r;
  int points = 0;
  for (const auto& c : s.components()) {
    if (c.is_point()) {
      if (a < *c.lo && *c.lo < b) ++points;
      continue;
    }
    KNum lo = c.lo ? std::max(*c.lo, a) : a;
    KNum hi = c.hi ? std::min(*c.hi, b) : b;
    if (lo < hi) return std::nullopt;
  }
  return points;
}

// ---------------------------------------------------------------- FO

namespace {

struct KeyHash {
  std::size_t operator()(const std::pair<const FoNode*, std::vector<KNum>>& k) const {
    std::size_t h = std::hash<const void*>()(k.first);
    for (const auto& x : k.second) h = h * 1000003u ^ x.hash();
    return h;
  }
};

struct Walk {
  std::string terminal;  // empty: a signal endpoint
  KNum offset;
  bool operator<(const Walk& o) const {
    if (terminal != o.terminal) return terminal < o.terminal;
    return offset < o.offset;
  }
};

class FoEvaluator {
 public:
  FoEvaluator(const FiniteSignal& sig, const FoEvalOptions& opts) : sig_(sig), opts_(opts) {}

  bool closed(const Fo& f, Env& env) {
    switch (f->kind) {
      case FoKind::kTrue:
        return true;
      case FoKind::kPred:
        return atoms(f->name).contains(value(f->t1, env));
      case FoKind::kLess:
        return value(f->t1, env) < value(f->t2, env);
      case FoKind::kEqual:
        return value(f->t1, env) == value(f->t2, env);
      case FoKind::kNot:
        return !closed(f->kids[0], env);
      case FoKind::kAnd:
        for (const auto& k : f->kids) {
          if (!closed(k, env)) return false;
        }
        return true;
      case FoKind::kOr:
        for (const auto& k : f->kids) {
          if (closed(k, env)) return true;
        }
        return false;
      case FoKind::kExists:
      case FoKind::kForall: {
        std::pair<const FoNode*, std::vector<KNum>> key{f.get(), {}};
        for (const auto& v : free_of(f)) key.second.push_back(lookup(v, env));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Env inner = env;
        inner.erase(f->name);
        SatSet s = sat_in(f->kids[0], inner, f->name, SatSet::all());
        bool r = f->kind == FoKind::kExists ? !s.is_empty() : s.is_all();
        memo_.emplace(std::move(key), r);
        return r;
      }
      default:
        throw Error(ErrorCode::kNotInFragment, "metric quantifiers must be expanded first");
    }
  }

  // Values of v inside `domain` that satisfy f, other variables from env.
  SatSet sat_in(const Fo& f, Env& env, const std::string& v, const SatSet& domain) {
    if (domain.is_empty()) return domain;
    const auto& fv = free_of(f);
    if (std::find(fv.begin(), fv.end(), v) == fv.end()) {
      return closed(f, env) ? domain : SatSet();
    }
    switch (f->kind) {
      case FoKind::kPred:
        return atoms(f->name).shift(-f->t1.offset).intersect(domain);
      case FoKind::kLess:
      case FoKind::kEqual: {
        const Term& a = f->t1;
        const Term& b = f->t2;
        if (a.var == v && b.var == v) {
          bool ok = f->kind == FoKind::kLess ? a.offset < b.offset : a.offset == b.offset;
          return ok ? domain : SatSet();
        }
        if (f->kind == FoKind::kEqual) {
          KNum p = a.var == v ? value(b, env) - a.offset : value(a, env) - b.offset;
          return SatSet::point(p).intersect(domain);
        }
        if (a.var == v) {
          return SatSet::interval(std::nullopt, false, value(b, env) - a.offset, false)
              .intersect(domain);
        }
        return SatSet::interval(value(a, env) - b.offset, false, std::nullopt, false)
            .intersect(domain);
      }
      case FoKind::kNot:
        return domain.minus(sat_in(f->kids[0], env, v, domain));
      case FoKind::kAnd: {
        SatSet d = domain;
        for (const auto& k : ordered(f)) {
          d = sat_in(k, env, v, d);
          if (d.is_empty()) break;
        }
        return d;
      }
      case FoKind::kOr: {
        SatSet out, rest = domain;
        for (const auto& k : ordered(f)) {
          SatSet s = sat_in(k, env, v, rest);
          out = out.unite(s);
          rest = rest.minus(s);
          if (rest.is_empty()) break;
        }
        return out;
      }
      case FoKind::kExists:
      case FoKind::kForall: {
        std::vector<KNum> grid = candidates(f, v, env);
        for (const auto& e : domain.endpoints()) grid.push_back(e);
        Env probe = env;
        return assemble_pointwise(
                   grid,
                   [&](const KNum& p) {
                     if (!domain.contains(p)) return false;
                     ++probes_;
                     probe[v] = p;
                     return closed(f, probe);
                   },
                   opts_.refine)
            .intersect(domain);
      }
      default:
        throw Error(ErrorCode::kNotInFragment, "metric quantifiers must be expanded first");
    }
  }

  std::size_t probes() const { return probes_; }

 private:
  KNum lookup(const std::string& v, const Env& env) const {
    auto it = env.find(v);
    if (it == env.end()) throw Error(ErrorCode::kUnboundVariable, "variable '" + v + "' is unbound");
    return it->second;
  }
  KNum value(const Term& t, const Env& env) const { return lookup(t.var, env) + t.offset; }

  const SatSet& atoms(const std::string& name) {
    auto it = atoms_.find(name);
    if (it != atoms_.end()) return it->second;
    return atoms_.emplace(name, atom_set(sig_, name)).first->second;
  }

  const std::vector<std::string>& free_of(const Fo& f) {
    auto it = free_.find(f.get());
    if (it != free_.end()) return it->second;
    auto s = fo_free_vars(f);
    return free_.emplace(f.get(), std::vector<std::string>(s.begin(), s.end())).first->second;
  }

  static bool has_quantifier(const Fo& f) {
    if (f->kind == FoKind::kExists || f->kind == FoKind::kForall) return true;
    for (const auto& k : f->kids) {
      if (has_quantifier(k)) return true;
    }
    return false;
  }

  const std::vector<Fo>& ordered(const Fo& f) {
    auto it = ordered_.find(f.get());
    if (it != ordered_.end()) return it->second;
    std::vector<Fo> kids = f->kids;
    std::stable_partition(kids.begin(), kids.end(),
                          [](const Fo& k) { return !has_quantifier(k); });
    return ordered_.emplace(f.get(), std::move(kids)).first->second;
  }

  // Endpoints of every atom set the formula reads.
  const std::vector<KNum>& signal_points(const Fo& f) {
    auto it = points_.find(f.get());
    if (it != points_.end()) return it->second;
    std::set<std::string> preds;
    fo_preds(f, preds);
    std::set<KNum> pts;
    for (const auto& p : preds) {
      for (const auto& e : atoms(p).endpoints()) pts.insert(e);
    }
    return points_.emplace(f.get(), std::vector<KNum>(pts.begin(), pts.end())).first->second;
  }

  // Walks of the difference-constraint graph from v to a terminal (a free
  // variable or a signal endpoint) through variables bound inside f.
  const std::set<Walk>& walks(const Fo& f, const std::string& v) {
    auto key = std::make_pair(f.get(), v);
    auto it = walks_.find(key);
    if (it != walks_.end()) return it->second;
    std::map<std::string, std::vector<Walk>> edges;
    std::set<std::string> bound{v};
    std::function<void(const Fo&)> collect = [&](const Fo& g) {
      switch (g->kind) {
        case FoKind::kPred:
          edges[g->t1.var].push_back({"", -g->t1.offset});
          break;
        case FoKind::kLess:
        case FoKind::kEqual:
          edges[g->t1.var].push_back({g->t2.var, g->t2.offset - g->t1.offset});
          edges[g->t2.var].push_back({g->t1.var, g->t1.offset - g->t2.offset});
          break;
        case FoKind::kExists:
        case FoKind::kForall:
          bound.insert(g->name);
          break;
        default:
          break;
      }
      for (const auto& k : g->kids) collect(k);
    };
    collect(f);
    std::set<Walk> out, seen;
    std::vector<Walk> frontier{{v, KNum()}};
    for (std::size_t layer = 0; layer <= bound.size() && !frontier.empty(); ++layer) {
      std::vector<Walk> next;
      for (const auto& w : frontier) {
        for (const auto& e : edges[w.terminal]) {
          Walk step{e.terminal, w.offset + e.offset};
          if (e.terminal.empty() || !bound.count(e.terminal)) {
            out.insert(step);
          } else if (e.terminal != v && seen.insert(step).second) {
            next.push_back(step);
          }
        }
      }
      frontier = std::move(next);
    }
    return walks_.emplace(key, std::move(out)).first->second;
  }

  std::vector<KNum> candidates(const Fo& f, const std::string& v, const Env& env) {
    std::vector<KNum> out;
    const auto& pts = signal_points(f);
    for (const auto& w : walks(f, v)) {
      if (w.terminal.empty()) {
        for (const auto& p : pts) out.push_back(p + w.offset);
      } else {
        out.push_back(lookup(w.terminal, env) + w.offset);
      }
    }
    return out;
  }

  const FiniteSignal& sig_;
  FoEvalOptions opts_;
  std::size_t probes_ = 0;
  std::map<std::string, SatSet> atoms_;
  std::unordered_map<const FoNode*, std::vector<std::string>> free_;
  std::unordered_map<const FoNode*, std::vector<Fo>> ordered_;
  std::unordered_map<const FoNode*, std::vector<KNum>> points_;
  std::map<std::pair<const FoNode*, std::string>, std::set<Walk>> walks_;
  std::unordered_map<std::pair<const FoNode*, std::vector<KNum>>, bool, KeyHash> memo_;
};

Fo prepare(const Fo& f, const FoEvalOptions& opts) {
  Fo g = expand_pq2mlo(f);
  int depth = fo_quantifier_depth(g);
  if (depth > opts.max_depth) {
    throw Error(ErrorCode::kDepthExceeded, "quantifier depth " + std::to_string(depth) +
                                               " exceeds the cap " +
                                               std::to_string(opts.max_depth));
  }
  return g;
}

void require_pq(const Fo& f) {
  if (!fragment_check(f, FragmentQuery{Fragment::kPq2mlo, {}, {}, KNum()})) {
    throw Error(ErrorCode::kNotInFragment, "formula is outside the punctual guarded fragment");
  }
}

}  // namespace

bool fo_eval(const Fo& f, const FiniteSignal& sig, const Env& env, const FoEvalOptions& opts) {
  Fo g = prepare(f, opts);
  for (const auto& v : fo_free_vars(g)) {
    if (!env.count(v)) throw Error(ErrorCode::kUnboundVariable, "variable '" + v + "' is unbound");
  }
  FoEvaluator ev(sig, opts);
  Env e = env;
  return ev.closed(g, e);
}

SatSet fo_sat(const Fo& f, const FiniteSignal& sig, const FoEvalOptions& opts) {
  Fo g = prepare(f, opts);
  auto fv = fo_free_vars(g);
  if (fv.size() > 1) {
    throw Error(ErrorCode::kUnboundVariable, "formula has more than one free variable");
  }
  FoEvaluator ev(sig, opts);
  Env env;
  std::string v = fv.empty() ? fresh_var({}, "x") : *fv.begin();
  return ev.sat_in(g, env, v, SatSet::all());
}

bool pq2mlo_eval(const Fo& f, const FiniteSignal& sig, const Env& env,
                 const FoEvalOptions& opts) {
  require_pq(f);
  return fo_eval(f, sig, env, opts);
}

SatSet pq2mlo_sat(const Fo& f, const FiniteSignal& sig, const FoEvalOptions& opts) {
  require_pq(f);
  return fo_sat(f, sig, opts);
}

// ---------------------------------------------------------------- equivalence

std::string Formula::str() const {
  return logic == Logic::kMtl ? mtl_to_string(mtl) : fo_to_string(fo);
}

Logic parse_logic(const std::string& name) {
  if (name == "mtl" || name == "mtl+c") return Logic::kMtl;
  if (name == "fo") return Logic::kFo;
  if (name == "pq2mlo") return Logic::kPq2mlo;
  throw Error(ErrorCode::kWrongLogic, "unknown logic '" + name + "'");
}

const char* logic_name(Logic logic) {
  switch (logic) {
    case Logic::kMtl: return "mtl";
    case Logic::kFo: return "fo";
    case Logic::kPq2mlo: return "pq2mlo";
  }
  return "?";
}

Formula make_formula(Logic logic, const std::string& text) {
  Formula f;
  f.logic = logic;
  if (logic == Logic::kMtl) {
    f.mtl = parse_mtl(text);
  } else if (logic == Logic::kFo) {
    f.fo = parse_fo(text);
  } else {
    f.fo = parse_pq2mlo(text);
  }
  return f;
}

SatSet formula_sat(const Formula& f, const FiniteSignal& sig, const FoEvalOptions& opts) {
  switch (f.logic) {
    case Logic::kMtl: return mtl_sat(f.mtl, sig);
    case Logic::kFo: return fo_sat(f.fo, sig, opts);
    case Logic::kPq2mlo: return pq2mlo_sat(f.fo, sig, opts);
  }
  return SatSet();
}

EquivReport equiv_check(const Formula& left, const Formula& right,
                        const std::vector<FiniteSignal>& signals,
                        const std::optional<Window>& window, const FoEvalOptions& opts) {
  EquivReport rep;
  SatSet clip = window ? SatSet::interval(window->lo, true, window->hi, true) : SatSet::all();
  for (std::size_t i = 0; i < signals.size(); ++i) {
    ++rep.trials;
    SatSet a = formula_sat(left, signals[i], opts).intersect(clip);
    SatSet b = formula_sat(right, signals[i], opts).intersect(clip);
    rep.grid_points_checked += a.endpoints().size() + b.endpoints().size();
    if (a == b) continue;
    SatSet diff = a.minus(b).unite(b.minus(a));
    EquivWitness w;
    w.signal = signals[i];
    w.signal_index = i;
    w.point = diff.representative();
    w.left_value = a.contains(w.point);
    w.right_value = b.contains(w.point);
    rep.equivalent = false;
    rep.witness = w;
    break;
  }
  return rep;
}

}  // namespace mtlk
