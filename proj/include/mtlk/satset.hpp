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

#include <optional>
#include <string>
#include <vector>

#include "mtlk/numeric.hpp"

namespace mtlk {

// One maximal piece of a satisfaction set; an absent endpoint is infinite.
struct Component {
  std::optional<KNum> lo;
  bool lo_closed = false;
  std::optional<KNum> hi;
  bool hi_closed = false;

  bool is_point() const { return lo && hi && *lo == *hi; }
  bool operator==(const Component&) const = default;
};

// Position just before or just after a real number, or one of the two
// infinities. A set is a sorted list of such positions taken in pairs.
struct Cut {
  int kind = 0;  // -1: -inf, 0: finite, +1: +inf
  KNum value;
  int side = 0;  // 0: just before value, 1: just after value

  static Cut neg_inf() { return Cut{-1, KNum(), 0}; }
  static Cut pos_inf() { return Cut{1, KNum(), 0}; }
  static Cut before(const KNum& v) { return Cut{0, v, 0}; }
  static Cut after(const KNum& v) { return Cut{0, v, 1}; }
  bool operator==(const Cut& o) const {
    return kind == o.kind && (kind != 0 || (value == o.value && side == o.side));
  }
};
bool operator<(const Cut& a, const Cut& b);
inline bool operator<=(const Cut& a, const Cut& b) { return !(b < a); }

// Finite union of intervals of the reals, kept normalized: components are
// sorted, nonempty and pairwise non-touching.
class SatSet {
 public:
  SatSet() = default;
  static SatSet empty() { return SatSet(); }
  static SatSet all();
  static SatSet point(const KNum& x);
  static SatSet interval(std::optional<KNum> lo, bool lo_closed,
                         std::optional<KNum> hi, bool hi_closed);
  static SatSet from_components(const std::vector<Component>& comps);
  static SatSet from_cuts(std::vector<Cut> cuts);

  bool is_empty() const { return cuts_.empty(); }
  bool is_all() const;
  bool contains(const KNum& x) const;
  std::vector<Component> components() const;
  std::size_t size() const { return cuts_.size() / 2; }
  const std::vector<Cut>& cuts() const { return cuts_; }
  // Finite endpoint values, sorted and deduplicated.
  std::vector<KNum> endpoints() const;

  SatSet complement() const;
  SatSet unite(const SatSet& o) const;
  SatSet intersect(const SatSet& o) const;
  SatSet minus(const SatSet& o) const { return intersect(o.complement()); }
  bool subset_of(const SatSet& o) const { return minus(o).is_empty(); }
  SatSet shift(const KNum& d) const;
  SatSet reflect() const;
  SatSet scale(const KNum& factor) const;

  // Some member of the set; requires a nonempty set.
  KNum representative() const;
  std::string str() const;

  bool operator==(const SatSet& o) const { return cuts_ == o.cuts_; }

 private:
  std::vector<Cut> cuts_;
};

Component component_from_cuts(const Cut& start, const Cut& end);
std::string component_str(const Component& c);
SatSet parse_satset(const std::string& text);

}  // namespace mtlk
