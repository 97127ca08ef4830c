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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtlk/numeric.hpp"
#include "mtlk/satset.hpp"
#include "mtlk/signal.hpp"
#include "mtlk/syntax.hpp"

namespace mtlk {

// ---------------------------------------------------------------- scaling

// Multiplies every shift constant by eps. Shifted predicate names P^c
// scale along with the constants.
Fo scale_fo(const Fo& f, const KNum& eps);
// Multiplies every interval endpoint by eps. Counting modalities have a
// fixed unit window and only admit eps = 1.
Mtl scale_mtl(const Mtl& f, const KNum& eps);

// ---------------------------------------------------------------- HIF

struct QuantifierSplit {
  Term guard_lo, guard_hi;  // u must lie strictly inside
  Fo less, equal, greater;
  Fo disjunction() const { return fo_or({less, equal, greater}); }
};

// Splits exists y in (s,t) at u. Nested intervals anchored at t (or s) are
// moved to u with the same offset, recursively.
QuantifierSplit split_quantifier(const Fo& f, const Term& u);

struct HifOptions {
  std::size_t max_nodes = 1000000;
};

// Equivalent formula in hierarchical interval form.
Fo hif_normalize(const Fo& f, const KNum& bound, const HifOptions& opts = {});

// Removes shifts on bound variables; P(y+c) becomes P^c(y).
Fo remove_violations(const Fo& f, const std::string& free = "x");

// Name of the proposition P shifted by c.
std::string shifted_name(const std::string& name, const KNum& c);

// ---------------------------------------------------------------- markers

struct MarkerContext {
  std::string anchor = "x";
  std::vector<KNum> shifts;  // sorted; one F marker per entry
  std::string eq, lt, gt;
  std::vector<std::string> at;  // parallel to shifts
};

// Marker names avoid every predicate of f.
MarkerContext make_marker_context(const Fo& f, const std::string& anchor = "x");
Fo marker_substitute(const Fo& f, const MarkerContext& ctx);
FiniteSignal marker_signal(const FiniteSignal& f, const KNum& anchor_value,
                           const MarkerContext& ctx);
Fo marker_unsubstitute(const Fo& f, const MarkerContext& ctx);

// ---------------------------------------------------------------- lifting

// Adds propositions carrying the given sets.
FiniteSignal extend_signal(const FiniteSignal& f,
                           const std::vector<std::pair<std::string, SatSet>>& sets);
FiniteSignal predicate_lift(const FiniteSignal& f,
                            const std::vector<std::pair<std::string, Mtl>>& named);

// ---------------------------------------------------------------- decompositions

std::string phi_name(int i);
std::string psi_name(int i);
// Lifts every phi_i and psi_i of d under phi_name / psi_name.
FiniteSignal lift_decomposition(const FiniteSignal& f, const Decomposition& d);
Fo decomposition_to_fo(const Decomposition& d);
Mtl translate_decomposition(const Decomposition& d, const KGroup& g,
                            std::optional<KNum> nu = std::nullopt);

// Restriction of d(x,y) to its first j members of psi_1, phi_1, ..., psi_n.
Fo build_delta_j(const Decomposition& d, int j, const std::string& x = "x",
                 const std::string& y = "y");
Fo build_delta_prime(const Decomposition& d);

// Keys are printed punctuality-free formulas with free variable x.
using CoreTranslation = std::map<std::string, Mtl>;
Mtl punctual_rewrite(const Fo& f, const CoreTranslation& core);

// ---------------------------------------------------------------- separation

enum class LimitSide { kPlus, kMinus };
Mtl k_limit(const Mtl& f, LimitSide side, const KNum& nu,
            const std::optional<KGroup>& g = std::nullopt);
KNum separation_n_choice(const Mtl& theta, const KNum& c, const KGroup& g);

}  // namespace mtlk
