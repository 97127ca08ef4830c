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

#include "mtlk/campaign.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "mtlk/error.hpp"

namespace mtlk {
namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mtlk_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(Campaign, CleanEvaluatorHasNoCounterexamples) {
  CampaignConfig cfg;
  cfg.trials = 100;
  CampaignReport rep = run_campaign(cfg);
  EXPECT_EQ(rep.trials_run, 100);
  EXPECT_TRUE(rep.failures.empty());
}

TEST(Campaign, InjectedUntilBugIsFoundAndDeterministic) {
  CampaignConfig cfg;
  cfg.until.closed_endpoint_bug = true;
  CampaignReport a = run_campaign(cfg);
  CampaignReport b = run_campaign(cfg);
  ASSERT_FALSE(a.failures.empty());
  ASSERT_EQ(a.failures.size(), b.failures.size());
  for (std::size_t i = 0; i < a.failures.size(); ++i) {
    EXPECT_EQ(case_to_json(a.failures[i].reg), case_to_json(b.failures[i].reg));
    EXPECT_NE(a.failures[i].fast, a.failures[i].reg.expected);
    EXPECT_EQ(replay_verdict(a.failures[i].reg), a.failures[i].reg.expected);
  }
}

TEST(Campaign, ConfigValidation) {
  CampaignConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = CampaignConfig{};
  cfg.endpoint_pool.clear();
  EXPECT_THROW(cfg.validate(), Error);
  cfg = CampaignConfig{};
  cfg.group = parse_group("1");
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Minimize, NeverGrowsAndKeepsDisagreement) {
  Rng rng(3);
  RandomSignalOptions opts;
  opts.num_breakpoints = 8;
  for (int i = 0; i < 30; ++i) {
    FiniteSignal f = random_signal(rng.next(), opts);
    auto has_p = [](const FiniteSignal& s) { return !prop_set(s, "P").is_empty(); };
    if (!has_p(f)) continue;
    FiniteSignal m = minimize_signal(f, has_p);
    EXPECT_LE(m.piece_count(), f.piece_count());
    EXPECT_TRUE(has_p(m));
    m.validate();
  }
}

TEST(Corpus, RecordReplayList) {
  auto dir = scratch("corpus");
  Corpus c(dir);
  EXPECT_TRUE(c.list().empty());
  RegressionCase rc;
  rc.formula = "F(0,1) P";
  rc.signal = "before {}\nat 0 {}\non (0,1) {P}\nat 1 {}\nafter {}\n";
  rc.expected = "(-1,1)";
  std::string id = c.record(rc);
  EXPECT_EQ(c.record(rc), id);
  ASSERT_EQ(c.list(), std::vector<std::string>{id});
  RegressionCase back = c.load(id);
  EXPECT_EQ(back.formula, rc.formula);
  EXPECT_EQ(replay_verdict(back), back.expected);
  std::ofstream(dir / "broken.json") << "{\"id\": 3";
  try {
    c.load("broken");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorpusCorrupt);
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mtlk
