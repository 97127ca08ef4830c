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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mtlk/eval.hpp"
#include "mtlk/numeric.hpp"
#include "mtlk/signal.hpp"

namespace mtlk {

struct CampaignConfig {
  std::uint64_t seed = 0;
  int trials = 200;
  int max_depth = 4;
  std::optional<Window> window;
  std::vector<KNum> endpoint_pool = default_endpoint_pool();
  KGroup group{{KNum(Rational(1, 2)), KNum::sqrt2()}};
  UntilOptions until;

  // Throws when an invariant fails.
  void validate() const;
};

// A stored differential-testing case. `expected` is the oracle's
// satisfaction set printed canonically.
struct RegressionCase {
  std::string id;
  std::string command = "eval --logic mtl";
  std::string formula;
  std::string signal;
  std::string expected;
};

struct Counterexample {
  int trial = 0;
  RegressionCase reg;
  std::string fast;  // evaluator output that disagreed
};

struct CampaignReport {
  int trials_run = 0;
  int formulas_skipped = 0;  // constants outside the group
  std::vector<Counterexample> failures;  // sorted by trial
};

void mtl_constants(const Mtl& f, std::vector<KNum>& out);

// Differential run of mtl_sat against the pointwise oracle.
CampaignReport run_campaign(const CampaignConfig& cfg);

// Drops breakpoints while `bad` still holds; never increases piece_count.
FiniteSignal minimize_signal(const FiniteSignal& f,
                             const std::function<bool(const FiniteSignal&)>& bad);

// Evaluates the stored case with the library evaluator.
std::string replay_verdict(const RegressionCase& c, const UntilOptions& opts = {});

std::string case_to_json(const RegressionCase& c);
RegressionCase case_from_json(const std::string& text);

class Corpus {
 public:
  explicit Corpus(std::filesystem::path dir);
  // Returns the id; identical cases share one file.
  std::string record(RegressionCase c);
  std::vector<std::string> list() const;
  RegressionCase load(const std::string& id) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace mtlk
