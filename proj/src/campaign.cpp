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

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtlk/error.hpp"
#include "mtlk/generate.hpp"

namespace mtlk {

namespace {

SatSet restrict_to(const SatSet& s, const std::optional<Window>& w) {
  if (!w) return s;
  return s.intersect(SatSet::interval(w->lo, true, w->hi, true));
}

std::string case_id(const RegressionCase& c) {
  std::uint64_t h = 1469598103934665603ull;
  for (const std::string* part : {&c.command, &c.formula, &c.signal}) {
    for (unsigned char ch : *part) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

void CampaignConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::kIndexOutOfRange, "trials must be at least 1");
  if (max_depth < 1) throw Error(ErrorCode::kIndexOutOfRange, "max depth must be at least 1");
  if (endpoint_pool.empty()) throw Error(ErrorCode::kPoolTooSmall, "endpoint pool is empty");
  for (const auto& e : endpoint_pool) {
    if (!group_contains(group, e)) {
      throw Error(ErrorCode::kWrongBound,
                  "pool endpoint " + e.str() + " is not in " + group.str());
    }
  }
  if (window && window->hi < window->lo) {
    throw Error(ErrorCode::kIntervalError, "window upper end below lower end");
  }
}

void mtl_constants(const Mtl& f, std::vector<KNum>& out) {
  if (f->kind == MtlKind::kUntil || f->kind == MtlKind::kSince) {
    out.push_back(f->interval.lo);
    if (f->interval.hi) out.push_back(*f->interval.hi);
  }
  for (const auto& k : f->kids) mtl_constants(k, out);
}

FiniteSignal minimize_signal(const FiniteSignal& f,
                             const std::function<bool(const FiniteSignal&)>& bad) {
  FiniteSignal cur = f;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.breakpoints.size() && cur.breakpoints.size() > 1; ++i) {
      FiniteSignal next = cur;
      auto at = static_cast<std::ptrdiff_t>(i);
      next.breakpoints.erase(next.breakpoints.begin() + at);
      next.at.erase(next.at.begin() + at);
      // The segment after a removed point joins the piece before it.
      if (i + 1 < cur.breakpoints.size()) {
        next.between.erase(next.between.begin() + at);
      } else {
        next.right_tail = cur.between.back();
        next.between.pop_back();
      }
      if (bad(next)) {
        cur = std::move(next);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  MtlGenOptions gen;
  gen.max_depth = cfg.max_depth;
  gen.irrational = group_contains(cfg.group, KNum::sqrt2());
  RandomSignalOptions sig_opts;
  sig_opts.endpoint_pool = cfg.endpoint_pool;
  CampaignReport rep;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Mtl f;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) {
        throw Error(ErrorCode::kWrongBound,
                    "no generated formula has all constants in " + cfg.group.str());
      }
      f = random_mtl(rng, gen);
      std::vector<KNum> cs;
      mtl_constants(f, cs);
      if (std::all_of(cs.begin(), cs.end(),
                      [&](const KNum& c) { return group_contains(cfg.group, c); })) {
        break;
      }
      ++rep.formulas_skipped;
    }
    sig_opts.num_breakpoints = 1 + rng.below(8);
    FiniteSignal sig = random_signal(rng.next(), sig_opts);
    ++rep.trials_run;
    auto disagree = [&](const FiniteSignal& s) {
      return restrict_to(mtl_sat(f, s, cfg.until), cfg.window) !=
             restrict_to(mtl_sat_oracle(f, s), cfg.window);
    };
    if (!disagree(sig)) continue;
    FiniteSignal small = minimize_signal(sig, disagree);
    Counterexample cx;
    cx.trial = trial;
    cx.reg.formula = mtl_to_string(f);
    cx.reg.signal = signal_to_text(small);
    cx.reg.expected = restrict_to(mtl_sat_oracle(f, small), cfg.window).str();
    cx.reg.id = case_id(cx.reg);
    cx.fast = restrict_to(mtl_sat(f, small, cfg.until), cfg.window).str();
    rep.failures.push_back(std::move(cx));
  }
  return rep;
}

std::string replay_verdict(const RegressionCase& c, const UntilOptions& opts) {
  std::istringstream cmd(c.command);
  std::string word, logic = "mtl";
  while (cmd >> word) {
    if (word == "--logic") cmd >> logic;
  }
  FiniteSignal sig = parse_signal(c.signal);
  Formula f = make_formula(parse_logic(logic), c.formula);
  if (f.logic == Logic::kMtl) return mtl_sat(f.mtl, sig, opts).str();
  return formula_sat(f, sig).str();
}

std::string case_to_json(const RegressionCase& c) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["command"] = c.command;
  j["formula"] = c.formula;
  j["signal"] = c.signal;
  j["expected"] = c.expected;
  return j.dump(2) + "\n";
}

RegressionCase case_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    RegressionCase c;
    c.id = j.at("id").get<std::string>();
    c.command = j.at("command").get<std::string>();
    c.formula = j.at("formula").get<std::string>();
    c.signal = j.at("signal").get<std::string>();
    c.expected = j.at("expected").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorpusCorrupt, e.what());
  }
}

Corpus::Corpus(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string Corpus::record(RegressionCase c) {
  if (c.id.empty()) c.id = case_id(c);
  std::filesystem::create_directories(dir_);
  std::ofstream out(dir_ / (c.id + ".json"));
  out << case_to_json(c);
  if (!out) throw Error(ErrorCode::kCorpusCorrupt, "cannot write " + (dir_ / c.id).string());
  return c.id;
}

std::vector<std::string> Corpus::list() const {
  std::vector<std::string> ids;
  if (!std::filesystem::exists(dir_)) return ids;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

RegressionCase Corpus::load(const std::string& id) const {
  std::ifstream in(dir_ / (id + ".json"));
  if (!in) throw Error(ErrorCode::kCorpusCorrupt, "missing case " + id);
  std::stringstream buf;
  buf << in.rdbuf();
  RegressionCase c = case_from_json(buf.str());
  try {
    replay_verdict(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorpusCorrupt, "case " + id + ": " + e.what());
  }
  return c;
}

}  // namespace mtlk
