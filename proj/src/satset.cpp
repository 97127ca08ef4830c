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

#include <algorithm>
#include <sstream>

#include "mtlk/error.hpp"

namespace mtlk {

bool operator<(const Cut& a, const Cut& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != 0) return false;
  auto c = a.value <=> b.value;
  if (c != 0) return c < 0;
  return a.side < b.side;
}

namespace {

Cut start_cut(const std::optional<KNum>& lo, bool closed) {
  if (!lo) return Cut::neg_inf();
  return closed ? Cut::before(*lo) : Cut::after(*lo);
}

Cut end_cut(const std::optional<KNum>& hi, bool closed) {
  if (!hi) return Cut::pos_inf();
  return closed ? Cut::after(*hi) : Cut::before(*hi);
}

// Boolean sweep over two normalized cut lists.
template <typename Op>
std::vector<Cut> combine(const std::vector<Cut>& a, const std::vector<Cut>& b,
                         Op op) {
  std::vector<Cut> out;
  std::size_t i = 0, j = 0;
  bool in_a = false, in_b = false, in_out = op(false, false);
  if (in_out) out.push_back(Cut::neg_inf());
  while (i < a.size() || j < b.size()) {
    Cut next;
    if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
      next = a[i];
    } else {
      next = b[j];
    }
    while (i < a.size() && a[i] == next) {
      in_a = !in_a;
      ++i;
    }
    while (j < b.size() && b[j] == next) {
      in_b = !in_b;
      ++j;
    }
    bool now = op(in_a, in_b);
    if (now != in_out) {
      if (!out.empty() && out.back() == next) {
        out.pop_back();
      } else {
        out.push_back(next);
      }
      in_out = now;
    }
  }
  if (in_out) out.push_back(Cut::pos_inf());
  // An interval that both starts and ends at -inf or +inf is empty.
  std::vector<Cut> clean;
  for (std::size_t k = 0; k + 1 < out.size(); k += 2) {
    if (out[k] < out[k + 1]) {
      clean.push_back(out[k]);
      clean.push_back(out[k + 1]);
    }
  }
  return clean;
}

}  // namespace

Component component_from_cuts(const Cut& start, const Cut& end) {
  Component c;
  if (start.kind == 0) {
    c.lo = start.value;
    c.lo_closed = start.side == 0;
  }
  if (end.kind == 0) {
    c.hi = end.value;
    c.hi_closed = end.side == 1;
  }
  return c;
}

SatSet SatSet::all() {
  SatSet s;
  s.cuts_ = {Cut::neg_inf(), Cut::pos_inf()};
  return s;
}

SatSet SatSet::point(const KNum& x) {
  SatSet s;
  s.cuts_ = {Cut::before(x), Cut::after(x)};
  return s;
}

SatSet SatSet::interval(std::optional<KNum> lo, bool lo_closed,
                        std::optional<KNum> hi, bool hi_closed) {
  SatSet s;
  Cut a = start_cut(lo, lo_closed), b = end_cut(hi, hi_closed);
  if (a < b) s.cuts_ = {a, b};
  return s;
}

SatSet SatSet::from_cuts(std::vector<Cut> cuts) {
  std::vector<std::pair<Cut, Cut>> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); k += 2) {
    if (cuts[k] < cuts[k + 1]) pieces.emplace_back(cuts[k], cuts[k + 1]);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  SatSet s;
  for (const auto& [a, b] : pieces) {
    if (!s.cuts_.empty() && a <= s.cuts_.back()) {
      if (s.cuts_.back() < b) s.cuts_.back() = b;
    } else {
      s.cuts_.push_back(a);
      s.cuts_.push_back(b);
    }
  }
  return s;
}

SatSet SatSet::from_components(const std::vector<Component>& comps) {
  std::vector<Cut> cuts;
  for (const auto& c : comps) {
    cuts.push_back(start_cut(c.lo, c.lo_closed));
    cuts.push_back(end_cut(c.hi, c.hi_closed));
  }
  return from_cuts(std::move(cuts));
}

bool SatSet::is_all() const {
  return cuts_.size() == 2 && cuts_[0].kind == -1 && cuts_[1].kind == 1;
}

bool SatSet::contains(const KNum& x) const {
  Cut probe = Cut::before(x);
  // Number of cuts at or before the position just before x.
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), probe);
  return (it - cuts_.begin()) % 2 == 1;
}

std::vector<Component> SatSet::components() const {
  std::vector<Component> out;
  for (std::size_t k = 0; k + 1 < cuts_.size(); k += 2) {
    out.push_back(component_from_cuts(cuts_[k], cuts_[k + 1]));
  }
  return out;
}

std::vector<KNum> SatSet::endpoints() const {
  std::vector<KNum> out;
  for (const auto& c : cuts_) {
    if (c.kind == 0 && (out.empty() || !(out.back() == c.value))) {
      out.push_back(c.value);
    }
  }
  return out;
}

SatSet SatSet::complement() const {
  SatSet s;
  s.cuts_ = combine(cuts_, {}, [](bool a, bool) { return !a; });
  return s;
}

SatSet SatSet::unite(const SatSet& o) const {
  SatSet s;
  s.cuts_ = combine(cuts_, o.cuts_, [](bool a, bool b) { return a || b; });
  return s;
}

SatSet SatSet::intersect(const SatSet& o) const {
  SatSet s;
  s.cuts_ = combine(cuts_, o.cuts_, [](bool a, bool b) { return a && b; });
  return s;
}

SatSet SatSet::shift(const KNum& d) const {
  SatSet s = *this;
  for (auto& c : s.cuts_) {
    if (c.kind == 0) c.value += d;
  }
  return s;
}

SatSet SatSet::reflect() const {
  SatSet s;
  for (auto it = cuts_.rbegin(); it != cuts_.rend(); ++it) {
    Cut c = *it;
    if (c.kind != 0) {
      c.kind = -c.kind;
    } else {
      c.value = -c.value;
      c.side = 1 - c.side;
    }
    s.cuts_.push_back(c);
  }
  return s;
}

SatSet SatSet::scale(const KNum& factor) const {
  if (factor.sign() <= 0) {
    throw Error(ErrorCode::kNonPositiveScale, "scale factor must be positive");
  }
  SatSet s = *this;
  for (auto& c : s.cuts_) {
    if (c.kind == 0) c.value = c.value * factor;
  }
  return s;
}

KNum SatSet::representative() const {
  if (cuts_.empty()) {
    throw Error(ErrorCode::kNoSuchElement, "empty set has no member");
  }
  Component c = component_from_cuts(cuts_[0], cuts_[1]);
  if (c.lo && c.lo_closed) return *c.lo;
  if (c.hi && c.hi_closed) return *c.hi;
  if (c.lo && c.hi) return midpoint(*c.lo, *c.hi);
  if (c.lo) return *c.lo + KNum(1);
  if (c.hi) return *c.hi - KNum(1);
  return KNum(0);
}

std::string component_str(const Component& c) {
  if (c.is_point()) return "{" + c.lo->str() + "}";
  std::string out = c.lo_closed ? "[" : "(";
  out += c.lo ? c.lo->str() : "-inf";
  out += ",";
  out += c.hi ? c.hi->str() : "inf";
  out += c.hi_closed ? "]" : ")";
  return out;
}

std::string SatSet::str() const {
  if (cuts_.empty()) return "empty";
  std::string out;
  for (const auto& c : components()) {
    if (!out.empty()) out += " U ";
    out += component_str(c);
  }
  return out;
}

SatSet parse_satset(const std::string& text) {
  std::vector<Component> comps;
  std::size_t p = 0;
  auto ws = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  auto bound = [&](bool lower) -> std::optional<KNum> {
    ws();
    if (text.compare(p, lower ? 4 : 3, lower ? "-inf" : "inf") == 0) {
      p += lower ? 4 : 3;
      return std::nullopt;
    }
    auto v = scan_knum(text, p);
    if (!v) throw SyntaxError(p, "expected an endpoint");
    return v;
  };
  ws();
  if (text.compare(p, 5, "empty") == 0) return SatSet();
  while (p < text.size()) {
    ws();
    if (p >= text.size()) break;
    Component c;
    char open = text[p++];
    if (open == '{') {
      c.lo = c.hi = bound(true);
      if (!c.lo) throw SyntaxError(p, "point must be finite");
      c.lo_closed = c.hi_closed = true;
      ws();
      if (p >= text.size() || text[p] != '}') throw SyntaxError(p, "expected '}'");
      ++p;
    } else if (open == '(' || open == '[') {
      c.lo_closed = open == '[';
      c.lo = bound(true);
      ws();
      if (p >= text.size() || text[p] != ',') throw SyntaxError(p, "expected ','");
      ++p;
      c.hi = bound(false);
      ws();
      if (p >= text.size() || (text[p] != ')' && text[p] != ']')) {
        throw SyntaxError(p, "expected ')' or ']'");
      }
      c.hi_closed = text[p++] == ']';
    } else {
      throw SyntaxError(p - 1, "expected a component");
    }
    comps.push_back(c);
    ws();
    if (p < text.size() && text[p] == 'U') ++p;
  }
  return SatSet::from_components(comps);
}

}  // namespace mtlk
