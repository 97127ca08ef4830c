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

#include "mtlk/signal.hpp"

#include <algorithm>
#include <sstream>

#include "mtlk/error.hpp"

namespace mtlk {

Rng::Rng(std::uint64_t seed) {
  // splitmix64 seeding of xoshiro256**.
  for (auto& s : s_) {
    seed += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = seed;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    s = z ^ (z >> 31);
  }
}

std::uint64_t Rng::next() {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    std::uint64_t v = next();
    if (v < limit) return v % n;
  }
}

void FiniteSignal::validate() const {
  if (breakpoints.empty()) {
    throw Error(ErrorCode::kInvalidSignal, "a signal needs at least one breakpoint");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw Error(ErrorCode::kInvalidSignal, "breakpoints must strictly increase");
    }
  }
  if (at.size() != breakpoints.size() || between.size() + 1 != breakpoints.size()) {
    throw Error(ErrorCode::kInvalidSignal, "piece count does not match breakpoints");
  }
}

Valuation value_at(const FiniteSignal& f, const KNum& r) {
  const auto& b = f.breakpoints;
  auto it = std::lower_bound(b.begin(), b.end(), r);
  std::size_t i = it - b.begin();
  if (it != b.end() && *it == r) return f.at[i];
  if (i == 0) return f.left_tail;
  if (i == b.size()) return f.right_tail;
  return f.between[i - 1];
}

SatSet prop_set(const FiniteSignal& f, const std::string& prop) {
  std::vector<Component> comps;
  const auto& b = f.breakpoints;
  if (f.left_tail.count(prop)) comps.push_back({std::nullopt, false, b.front(), false});
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (f.at[i].count(prop)) comps.push_back({b[i], true, b[i], true});
    if (i + 1 < b.size() && f.between[i].count(prop)) {
      comps.push_back({b[i], false, b[i + 1], false});
    }
  }
  if (f.right_tail.count(prop)) comps.push_back({b.back(), false, std::nullopt, false});
  return SatSet::from_components(comps);
}

FiniteSignal scale_signal(const FiniteSignal& f, const KNum& eps) {
  if (eps.sign() <= 0) {
    throw Error(ErrorCode::kNonPositiveScale, "scale factor must be positive");
  }
  FiniteSignal g = f;
  for (auto& b : g.breakpoints) b = b * eps;
  return g;
}

std::vector<KNum> default_endpoint_pool() {
  std::vector<KNum> pool;
  for (int n = -8; n <= 8; ++n) pool.push_back(KNum(Rational(n, 2)));
  return pool;
}

FiniteSignal random_signal(std::uint64_t seed, const RandomSignalOptions& opts) {
  std::vector<KNum> pool =
      opts.endpoint_pool.empty() ? default_endpoint_pool() : opts.endpoint_pool;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::size_t n = std::max<std::size_t>(1, opts.num_breakpoints);
  if (pool.size() < n) {
    throw Error(ErrorCode::kPoolTooSmall,
                "pool has " + std::to_string(pool.size()) + " values, need " +
                    std::to_string(n));
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  FiniteSignal f;
  f.props = opts.props;
  f.breakpoints.assign(pool.begin(), pool.begin() + n);
  std::sort(f.breakpoints.begin(), f.breakpoints.end());
  auto draw = [&] {
    Valuation v;
    for (const auto& p : opts.props) {
      if (rng.coin()) v.insert(p);
    }
    return v;
  };
  f.left_tail = draw();
  for (std::size_t i = 0; i < n; ++i) {
    f.at.push_back(draw());
    if (i + 1 < n) f.between.push_back(draw());
  }
  f.right_tail = draw();
  return f;
}

namespace {

std::string val_str(const Valuation& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : v) {
    if (!first) out += " ";
    out += p;
    first = false;
  }
  return out + "}";
}

Valuation parse_val(const std::string& s, std::size_t line) {
  auto a = s.find('{'), b = s.rfind('}');
  if (a == std::string::npos || b == std::string::npos || b < a) {
    throw SyntaxError(line, "expected a {...} valuation");
  }
  std::istringstream in(s.substr(a + 1, b - a - 1));
  Valuation v;
  std::string p;
  while (in >> p) v.insert(p);
  return v;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string signal_to_text(const FiniteSignal& f) {
  std::ostringstream out;
  out << "before " << val_str(f.left_tail) << "\n";
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    out << "at " << f.breakpoints[i] << " " << val_str(f.at[i]) << "\n";
    if (i + 1 < f.breakpoints.size()) {
      out << "on (" << f.breakpoints[i] << "," << f.breakpoints[i + 1] << ") "
          << val_str(f.between[i]) << "\n";
    }
  }
  out << "after " << val_str(f.right_tail) << "\n";
  return out.str();
}

// Line numbers stand in for positions in signal syntax errors.
FiniteSignal parse_signal(const std::string& text) {
  FiniteSignal f;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::set<std::string> seen;
  bool have_props = false;
  std::vector<std::pair<KNum, KNum>> segments;
  std::vector<Valuation> segment_vals;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (kw == "props") {
      std::istringstream ps(rest);
      std::string p;
      while (ps >> p) f.props.push_back(p);
      have_props = true;
      continue;
    }
    Valuation v = parse_val(rest, lineno);
    seen.insert(v.begin(), v.end());
    if (kw == "before") {
      f.left_tail = v;
    } else if (kw == "after") {
      f.right_tail = v;
    } else if (kw == "at") {
      f.breakpoints.push_back(parse_knum(trim(rest.substr(0, rest.find('{')))));
      f.at.push_back(v);
    } else if (kw == "on") {
      auto a = rest.find('('), c = rest.find(','), b = rest.find(')');
      if (a == std::string::npos || c == std::string::npos || b == std::string::npos) {
        throw SyntaxError(lineno, "expected (a,b) segment");
      }
      segments.emplace_back(parse_knum(trim(rest.substr(a + 1, c - a - 1))),
                            parse_knum(trim(rest.substr(c + 1, b - c - 1))));
      segment_vals.push_back(v);
    } else {
      throw SyntaxError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  std::vector<std::size_t> order(f.breakpoints.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return f.breakpoints[x] < f.breakpoints[y]; });
  std::vector<KNum> bps;
  std::vector<Valuation> ats;
  for (auto i : order) {
    bps.push_back(f.breakpoints[i]);
    ats.push_back(f.at[i]);
  }
  f.breakpoints = bps;
  f.at = ats;
  f.between.assign(bps.empty() ? 0 : bps.size() - 1, Valuation());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    bool placed = false;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
      if (bps[i] == segments[s].first && bps[i + 1] == segments[s].second) {
        f.between[i] = segment_vals[s];
        placed = true;
      }
    }
    if (!placed) {
      throw Error(ErrorCode::kInvalidSignal,
                  "segment (" + segments[s].first.str() + "," +
                      segments[s].second.str() + ") does not join adjacent breakpoints");
    }
  }
  if (!have_props) f.props.assign(seen.begin(), seen.end());
  f.validate();
  return f;
}

}  // namespace mtlk
