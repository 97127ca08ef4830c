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

#include "mtlk/generate.hpp"

namespace mtlk {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.below(v.size())];
}

KNum half(int n) { return KNum(Rational(n, 2)); }

IntervalK random_interval(Rng& rng, bool irrational) {
  std::vector<KNum> ends{half(0), half(1), half(2), half(3), half(4), half(6)};
  if (irrational) ends.push_back(KNum::sqrt2());
  switch (rng.below(4)) {
    case 0:
      return IntervalK::point(ends[1 + rng.below(ends.size() - 1)]);
    case 1:
      return IntervalK::make(pick(rng, ends), false, std::nullopt, false);
    default: {
      KNum a = pick(rng, ends), b = pick(rng, ends);
      if (b < a) std::swap(a, b);
      if (a == b) return IntervalK::point(a.is_zero() ? half(1) : a);
      return IntervalK::make(a, !a.is_zero() && rng.coin(), b, rng.coin());
    }
  }
}

Mtl gen_mtl(Rng& rng, const MtlGenOptions& o, int depth) {
  if (depth == 0 || rng.below(5) == 0) {
    if (rng.below(12) == 0) return mtl_true();
    return mtl_prop(pick(rng, o.props));
  }
  switch (rng.below(o.counting ? 8 : 7)) {
    case 0:
      return mtl_not(gen_mtl(rng, o, depth - 1));
    case 1:
      return mtl_and({gen_mtl(rng, o, depth - 1), gen_mtl(rng, o, depth - 1)});
    case 2:
      return mtl_or({gen_mtl(rng, o, depth - 1), gen_mtl(rng, o, depth - 1)});
    case 3:
    case 4:
      return mtl_until(gen_mtl(rng, o, depth - 1), gen_mtl(rng, o, depth - 1),
                       random_interval(rng, o.irrational));
    case 5:
    case 6:
      return mtl_since(gen_mtl(rng, o, depth - 1), gen_mtl(rng, o, depth - 1),
                       random_interval(rng, o.irrational));
    default:
      return mtl_count(1 + static_cast<int>(rng.below(3)), gen_mtl(rng, o, depth - 1),
                       rng.coin());
  }
}

KNum small_offset(Rng& rng) {
  static const std::vector<KNum> offs{half(0), half(0), half(1), half(-1), half(2), half(-2)};
  return pick(rng, offs);
}

class FoGen {
 public:
  FoGen(Rng& rng, const FoGenOptions& o, std::optional<KNum> bound)
      : rng_(rng), o_(o), bound_(bound) {}

  Fo gen(int depth, std::vector<std::string>& scope, int& counter, bool need_quant) {
    bool leaf = depth == 0 || (!need_quant && rng_.below(4) == 0);
    if (leaf) return atom(scope);
    switch (rng_.below(need_quant ? 2 : 6)) {
      case 0:
      case 1:
        return quantifier(depth, scope, counter);
      case 2:
        return fo_not(gen(depth, scope, counter, false));
      case 3:
        return fo_and({gen(depth, scope, counter, false), gen(depth - 1, scope, counter, false)});
      case 4:
        return fo_or({gen(depth - 1, scope, counter, false), gen(depth, scope, counter, false)});
      default:
        return atom(scope);
    }
  }

 private:
  Fo quantifier(int depth, std::vector<std::string>& scope, int& counter) {
    std::string y = "y" + std::to_string(counter++);
    bool exists = rng_.coin();
    Term lo, hi;
    bool guarded = bound_.has_value() || rng_.coin();
    if (bound_) {
      lo = var(o_.free_var, -*bound_);
      hi = var(o_.free_var, *bound_);
    } else if (guarded) {
      lo = var(pick(rng_, scope), small_offset(rng_));
      hi = var(pick(rng_, scope), small_offset(rng_) + KNum(1));
    }
    scope.push_back(y);
    Fo body = gen(depth - 1, scope, counter, false);
    // Keep the bound variable relevant.
    if (!fo_free_vars(body).count(y)) body = fo_and({pred(y), body});
    scope.pop_back();
    if (guarded) return exists ? fo_exists_in(y, lo, hi, body) : fo_forall_in(y, lo, hi, body);
    return exists ? fo_exists(y, body) : fo_forall(y, body);
  }

  Fo pred(const std::string& v) {
    KNum c = bound_ ? KNum() : small_offset(rng_);
    return fo_pred(pick(rng_, o_.props), var(v, c));
  }

  Fo atom(const std::vector<std::string>& scope) {
    std::vector<std::string> preds_ok = scope;
    if (bound_) preds_ok.erase(preds_ok.begin());
    unsigned r = rng_.below(10);
    if (r < 5 && !preds_ok.empty()) return pred(pick(rng_, preds_ok));
    if (r < 5) return fo_less(var(scope[0]), var(scope[0], half(1)));
    const std::string& a = pick(rng_, scope);
    const std::string& b = pick(rng_, scope);
    if (r == 9) return fo_equal(var(a), var(b, small_offset(rng_)));
    return fo_less(var(a, small_offset(rng_)), var(b));
  }

  Rng& rng_;
  const FoGenOptions& o_;
  std::optional<KNum> bound_;
};

}  // namespace

Mtl random_mtl(Rng& rng, const MtlGenOptions& opts) { return gen_mtl(rng, opts, opts.max_depth); }

Fo random_fo(Rng& rng, const FoGenOptions& opts) {
  FoGen g(rng, opts, std::nullopt);
  std::vector<std::string> scope{opts.free_var};
  int counter = 1;
  Fo f = g.gen(opts.max_depth, scope, counter, true);
  if (!fo_free_vars(f).count(opts.free_var)) {
    f = fo_and({fo_pred(opts.props[0], var(opts.free_var)), f});
  }
  return f;
}

Fo random_bounded_fo(Rng& rng, const FoGenOptions& opts, const KNum& bound) {
  FoGen g(rng, opts, bound);
  std::vector<std::string> scope{opts.free_var};
  int counter = 1;
  return g.gen(opts.max_depth, scope, counter, true);
}

}  // namespace mtlk
