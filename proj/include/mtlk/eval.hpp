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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtlk/satset.hpp"
#include "mtlk/signal.hpp"
#include "mtlk/syntax.hpp"

namespace mtlk {

using Env = std::map<std::string, KNum>;

// Set of time points carrying a proposition. A name of the form `P^c` that
// the signal does not define denotes P shifted left by c.
SatSet atom_set(const FiniteSignal& f, const std::string& name);

// Builds the set {r : pred(r)} assuming pred is constant on every open cell
// between consecutive critical points. `extra` adds that many evenly spread
// probes inside each cell (a refinement of the grid).
SatSet assemble_pointwise(std::vector<KNum> critical,
                          const std::function<bool(const KNum&)>& pred, int extra = 0);

struct UntilOptions {
  // Fault injection: a shifted endpoint is closed when either contributing
  // endpoint is closed, instead of both.
  bool closed_endpoint_bug = false;
};

// future: {r : exists t > r, t - r in I, t in s2, (r,t) inside s1}; past mirrors.
SatSet until_op(const SatSet& s1, const SatSet& s2, const IntervalK& i, bool future,
                const UntilOptions& opts = {});
// future: {r : s meets (r, r+1) in at least n points}; past uses (r-1, r).
SatSet counting_op(const SatSet& s, int n, bool future);

SatSet mtl_sat(const Mtl& f, const FiniteSignal& sig, const UntilOptions& opts = {});

// Pointwise decision procedures kept independent of until_op/counting_op.
bool mtl_holds_oracle(const Mtl& f, const FiniteSignal& sig, const KNum& r);
SatSet mtl_sat_oracle(const Mtl& f, const FiniteSignal& sig);
// Number of points of s inside the unit window after (future) or before r;
// nullopt when infinite.
std::optional<int> naive_window_count(const SatSet& s, const KNum& r, bool future);

struct FoEvalOptions {
  int max_depth = 5;
  int refine = 0;  // extra probes per grid cell
};

bool fo_eval(const Fo& f, const FiniteSignal& sig, const Env& env,
             const FoEvalOptions& opts = {});
// Satisfaction set over the single free variable (any value when closed).
SatSet fo_sat(const Fo& f, const FiniteSignal& sig, const FoEvalOptions& opts = {});

bool pq2mlo_eval(const Fo& f, const FiniteSignal& sig, const Env& env,
                 const FoEvalOptions& opts = {});
SatSet pq2mlo_sat(const Fo& f, const FiniteSignal& sig, const FoEvalOptions& opts = {});

enum class Logic { kMtl, kFo, kPq2mlo };

struct Formula {
  Logic logic = Logic::kMtl;
  Mtl mtl;
  Fo fo;
  std::string str() const;
};
Formula make_formula(Logic logic, const std::string& text);
Logic parse_logic(const std::string& name);
const char* logic_name(Logic logic);
SatSet formula_sat(const Formula& f, const FiniteSignal& sig, const FoEvalOptions& opts = {});

struct EquivWitness {
  FiniteSignal signal;
  std::size_t signal_index = 0;
  KNum point;
  bool left_value = false;
  bool right_value = false;
};

struct EquivReport {
  bool equivalent = true;
  std::optional<EquivWitness> witness;
  int trials = 0;
  std::size_t grid_points_checked = 0;
};

struct Window {
  KNum lo, hi;
};

// Compares satisfaction sets exactly, over the whole line unless a window
// is given.
EquivReport equiv_check(const Formula& left, const Formula& right,
                        const std::vector<FiniteSignal>& signals,
                        const std::optional<Window>& window = std::nullopt,
                        const FoEvalOptions& opts = {});

}  // namespace mtlk
