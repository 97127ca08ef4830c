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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mtlk/numeric.hpp"
#include "mtlk/satset.hpp"

namespace mtlk {

using Valuation = std::set<std::string>;

// Piecewise-constant signal with finitely many breakpoints. Point values
// and open-segment values are independent, so a proposition may hold at a
// breakpoint alone.
struct FiniteSignal {
  std::vector<std::string> props;
  Valuation left_tail;
  std::vector<KNum> breakpoints;  // strictly increasing, nonempty
  std::vector<Valuation> at;      // one per breakpoint
  std::vector<Valuation> between;  // one per consecutive pair
  Valuation right_tail;

  void validate() const;
  std::size_t piece_count() const { return 2 * breakpoints.size() + 1; }
};

Valuation value_at(const FiniteSignal& f, const KNum& r);
SatSet prop_set(const FiniteSignal& f, const std::string& prop);
FiniteSignal scale_signal(const FiniteSignal& f, const KNum& eps);

struct RandomSignalOptions {
  std::size_t num_breakpoints = 4;
  std::vector<std::string> props = {"P", "Q"};
  std::vector<KNum> endpoint_pool;  // empty: integers and halves in [-4, 4]
};

FiniteSignal random_signal(std::uint64_t seed, const RandomSignalOptions& opts);
std::vector<KNum> default_endpoint_pool();

std::string signal_to_text(const FiniteSignal& f);
FiniteSignal parse_signal(const std::string& text);

// Deterministic generator with a portable bounded draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);
  bool coin() { return below(2) == 1; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_[4];
};

}  // namespace mtlk
