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

#include <string>
#include <vector>

#include "mtlk/signal.hpp"
#include "mtlk/syntax.hpp"

namespace mtlk {

struct MtlGenOptions {
  int max_depth = 4;
  std::vector<std::string> props = {"P", "Q"};
  bool counting = true;
  bool irrational = true;  // allow rt2 interval endpoints
};

// Random MTL formula with temporal nesting at most max_depth.
Mtl random_mtl(Rng& rng, const MtlGenOptions& opts);

struct FoGenOptions {
  int max_depth = 3;  // quantifier depth
  std::vector<std::string> props = {"P", "Q"};
  std::string free_var = "x";
};

// Random FO formula with exactly one free variable.
Fo random_fo(Rng& rng, const FoGenOptions& opts);

// Random N-bounded formula: every quantifier ranges over (x-N, x+N),
// predicates apply to bound variables, comparisons carry small offsets.
Fo random_bounded_fo(Rng& rng, const FoGenOptions& opts, const KNum& bound);

}  // namespace mtlk
