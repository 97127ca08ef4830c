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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtlk/campaign.hpp"
#include "mtlk/error.hpp"
#include "mtlk/eval.hpp"
#include "mtlk/transform.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kUsage = 2;

struct Output {
  bool json = false;
  ordered_json doc = ordered_json::object();
  std::ostringstream text;

  int emit(int status) {
    if (json) {
      doc["status"] = status;
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << text.str();
    }
    return status;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mtlk::Error(mtlk::ErrorCode::kInvalidSignal, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MLK_SEED")) return std::stoull(env);
  return 0;
}

std::optional<mtlk::Window> parse_window(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw mtlk::Error(mtlk::ErrorCode::kIntervalError, "window must be 'lo,hi'");
  }
  return mtlk::Window{mtlk::parse_knum(text.substr(0, comma)),
                      mtlk::parse_knum(text.substr(comma + 1))};
}

std::vector<mtlk::FiniteSignal> seeded_signals(std::uint64_t seed, int n) {
  mtlk::Rng rng(seed);
  std::vector<mtlk::FiniteSignal> out;
  for (int i = 0; i < n; ++i) out.push_back(mtlk::random_signal(rng.next(), {}));
  return out;
}

struct CampaignArgs {
  std::uint64_t seed = default_seed();
  int trials = 200;
  int max_depth = 4;
  std::string window;
  std::string pool;
  std::string group = "1/2 rt2";
  bool until_bug = false;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "campaign seed (default: $MLK_SEED or 0)");
    app->add_option("--trials", trials);
    app->add_option("--max-depth", max_depth);
    app->add_option("--window", window, "compare only on [lo,hi], written 'lo,hi'");
    app->add_option("--pool", pool, "space-separated signal endpoints");
    app->add_option("--group", group, "generators of the constant group");
    app->add_flag("--inject-until-bug", until_bug, "closed/open endpoint fault in until_op");
  }

  mtlk::CampaignConfig config() const {
    mtlk::CampaignConfig c;
    c.seed = seed;
    c.trials = trials;
    c.max_depth = max_depth;
    c.window = parse_window(window);
    c.group = mtlk::parse_group(group);
    if (!pool.empty()) {
      c.endpoint_pool.clear();
      std::istringstream in(pool);
      std::string tok;
      while (in >> tok) c.endpoint_pool.push_back(mtlk::parse_knum(tok));
    }
    c.until.closed_endpoint_bug = until_bug;
    return c;
  }
};

int report_campaign(const mtlk::CampaignReport& rep, const std::string& corpus_dir, Output& out) {
  out.doc["trials"] = rep.trials_run;
  out.doc["skipped_formulas"] = rep.formulas_skipped;
  out.doc["counterexamples"] = ordered_json::array();
  out.text << "trials " << rep.trials_run << ", counterexamples " << rep.failures.size() << "\n";
  for (const auto& cx : rep.failures) {
    std::string id = cx.reg.id;
    if (!corpus_dir.empty()) id = mtlk::Corpus(corpus_dir).record(cx.reg);
    out.doc["counterexamples"].push_back({{"trial", cx.trial},
                                          {"id", id},
                                          {"formula", cx.reg.formula},
                                          {"signal", cx.reg.signal},
                                          {"expected", cx.reg.expected},
                                          {"got", cx.fast}});
    out.text << "trial " << cx.trial << " [" << id << "] " << cx.reg.formula << "\n"
             << "  expected " << cx.reg.expected << "\n  got      " << cx.fast << "\n"
             << cx.reg.signal;
  }
  return rep.failures.empty() ? kOk : kCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mtlk: metric temporal logic toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "machine-readable report");

  std::string logic = "mtl", formula, signal_path;
  auto add_formula = [&](CLI::App* sub) {
    sub->add_option("--logic", logic, "mtl, fo or pq2mlo");
    sub->add_option("-f,--formula", formula)->required();
  };

  auto* parse = app.add_subcommand("parse", "print the canonical form of a formula");
  add_formula(parse);

  auto* eval = app.add_subcommand("eval", "satisfaction set of a formula over a signal file");
  add_formula(eval);
  eval->add_option("-s,--signal", signal_path)->required();

  std::string decomp_text, group_text = "1/4", nu_text;
  auto* tdec = app.add_subcommand("translate-decomp", "decomposition formula to MTL");
  tdec->add_option("-d,--decomp", decomp_text)->required();
  tdec->add_option("-g,--group", group_text);
  tdec->add_option("--nu", nu_text);
  auto* tcount = app.add_subcommand("translate-count", "decomposition formula to PQ2MLO");
  tcount->add_option("-d,--decomp", decomp_text)->required();

  std::string bound_text = "1", free_var = "x";
  auto* hif = app.add_subcommand("hif", "hierarchical interval form of an N-bounded formula");
  hif->add_option("-f,--formula", formula)->required();
  hif->add_option("-N,--bound", bound_text);
  auto* devi = app.add_subcommand("deviolate", "move shifts off bound variables");
  devi->add_option("-f,--formula", formula)->required();
  devi->add_option("--free", free_var);

  std::string eps_text;
  auto* scale = app.add_subcommand("scale", "multiply constants by eps");
  scale->add_option("--eps", eps_text)->required();
  scale->add_option("--logic", logic);
  scale->add_option("-f,--formula", formula);
  scale->add_option("-s,--signal", signal_path);

  std::vector<std::string> generators;
  auto* density = app.add_subcommand("density", "classify the group generated by constants");
  density->add_option("generators", generators);

  auto* reach = app.add_subcommand("reach", "future and past reach of an MTL formula");
  reach->add_option("-f,--formula", formula)->required();

  std::string left, right, left_logic = "mtl", right_logic = "mtl", window_text;
  std::vector<std::string> signal_files;
  int num_signals = 50;
  std::uint64_t seed = default_seed();
  auto* equiv = app.add_subcommand("equiv", "compare two formulas on signals");
  equiv->add_option("--left", left)->required();
  equiv->add_option("--right", right)->required();
  equiv->add_option("--left-logic", left_logic);
  equiv->add_option("--right-logic", right_logic);
  equiv->add_option("--signals", num_signals, "number of seeded random signals");
  equiv->add_option("-s,--signal", signal_files, "signal files (replace random ones)");
  equiv->add_option("--seed", seed);
  equiv->add_option("--window", window_text, "compare only on [lo,hi], written 'lo,hi'");

  CampaignArgs fuzz_args;
  std::string corpus_dir;
  auto* fuzz = app.add_subcommand("fuzz", "differential campaign of mtl_sat against the oracle");
  fuzz_args.attach(fuzz);
  fuzz->add_option("--corpus", corpus_dir, "store minimized counterexamples here");

  auto* corpus = app.add_subcommand("corpus", "regression corpus");
  corpus->require_subcommand(1);
  std::string dir = "corpus";
  CampaignArgs rec_args;
  auto* record = corpus->add_subcommand("record", "run a campaign and store its failures");
  rec_args.attach(record);
  record->add_option("--dir", dir);
  auto* replay = corpus->add_subcommand("replay", "re-run stored cases");
  replay->add_option("--dir", dir);
  auto* list = corpus->add_subcommand("list", "print stored ids");
  list->add_option("--dir", dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (parse->parsed()) {
      std::string s = mtlk::make_formula(mtlk::parse_logic(logic), formula).str();
      out.doc["formula"] = s;
      out.text << s << "\n";
    } else if (eval->parsed()) {
      mtlk::Formula f = mtlk::make_formula(mtlk::parse_logic(logic), formula);
      std::string s = mtlk::formula_sat(f, mtlk::parse_signal(read_file(signal_path))).str();
      out.doc["sat"] = s;
      out.text << s << "\n";
    } else if (tdec->parsed()) {
      std::optional<mtlk::KNum> nu;
      if (!nu_text.empty()) nu = mtlk::parse_knum(nu_text);
      mtlk::Mtl m = mtlk::translate_decomposition(mtlk::parse_decomposition(decomp_text),
                                                  mtlk::parse_group(group_text), nu);
      out.doc["mtl"] = mtlk::mtl_to_string(m);
      out.doc["size"] = mtlk::mtl_size(m);
      out.text << mtlk::mtl_to_string(m) << "\n";
    } else if (tcount->parsed()) {
      std::string s =
          mtlk::fo_to_string(mtlk::build_delta_prime(mtlk::parse_decomposition(decomp_text)));
      out.doc["pq2mlo"] = s;
      out.text << s << "\n";
    } else if (hif->parsed()) {
      std::string s =
          mtlk::fo_to_string(mtlk::hif_normalize(mtlk::parse_fo(formula), mtlk::parse_knum(bound_text)));
      out.doc["hif"] = s;
      out.text << s << "\n";
    } else if (devi->parsed()) {
      std::string s = mtlk::fo_to_string(mtlk::remove_violations(mtlk::parse_fo(formula), free_var));
      out.doc["fo"] = s;
      out.text << s << "\n";
    } else if (scale->parsed()) {
      mtlk::KNum eps = mtlk::parse_knum(eps_text);
      if (formula.empty() && signal_path.empty()) {
        throw mtlk::Error(mtlk::ErrorCode::kSyntaxError, "scale needs --formula or --signal");
      }
      if (!formula.empty()) {
        mtlk::Formula f = mtlk::make_formula(mtlk::parse_logic(logic), formula);
        std::string s = f.logic == mtlk::Logic::kMtl
                            ? mtlk::mtl_to_string(mtlk::scale_mtl(f.mtl, eps))
                            : mtlk::fo_to_string(mtlk::scale_fo(f.fo, eps));
        out.doc["formula"] = s;
        out.text << s << "\n";
      }
      if (!signal_path.empty()) {
        std::string s = mtlk::signal_to_text(
            mtlk::scale_signal(mtlk::parse_signal(read_file(signal_path)), eps));
        out.doc["signal"] = s;
        out.text << s;
      }
    } else if (density->parsed()) {
      std::string joined;
      for (const auto& g : generators) joined += g + " ";
      mtlk::KGroup g = mtlk::parse_group(joined);
      mtlk::DensityResult d = mtlk::is_dense(g);
      out.doc["group"] = g.str();
      if (d.dense) {
        out.doc["dense"] = true;
        out.text << "dense";
        if (!g.generators.empty()) {
          mtlk::KNum nu = mtlk::pick_nu(g, mtlk::KNum(mtlk::Rational(1, 10)));
          out.doc["sample_nu"] = nu.str();
          out.text << " (sample nu = " << nu.str() << ")";
        } else {
          out.text << " (vacuous)";
        }
        out.text << "\n";
      } else {
        out.doc["dense"] = false;
        out.doc["epsilon"] = d.epsilon->str();
        out.text << "discrete: epsilon*Z with epsilon = " << d.epsilon->str() << "\n";
      }
    } else if (reach->parsed()) {
      mtlk::Mtl m = mtlk::parse_mtl(formula);
      std::string fr = mtlk::reach_str(mtlk::future_reach(m));
      std::string pr = mtlk::reach_str(mtlk::past_reach(m));
      out.doc["fr"] = fr;
      out.doc["pr"] = pr;
      out.text << "fr = " << fr << "\npr = " << pr << "\n";
    } else if (equiv->parsed()) {
      mtlk::Formula a = mtlk::make_formula(mtlk::parse_logic(left_logic), left);
      mtlk::Formula b = mtlk::make_formula(mtlk::parse_logic(right_logic), right);
      std::vector<mtlk::FiniteSignal> sigs;
      for (const auto& path : signal_files) sigs.push_back(mtlk::parse_signal(read_file(path)));
      if (sigs.empty()) sigs = seeded_signals(seed, num_signals);
      mtlk::EquivReport rep = mtlk::equiv_check(a, b, sigs, parse_window(window_text));
      out.doc["equivalent"] = rep.equivalent;
      out.doc["trials"] = rep.trials;
      out.doc["grid_points_checked"] = rep.grid_points_checked;
      if (rep.equivalent) {
        out.text << "equivalent on " << rep.trials << " signals (" << rep.grid_points_checked
                 << " grid points)\n";
      } else {
        const auto& w = *rep.witness;
        out.doc["witness"] = {{"signal_index", w.signal_index},
                              {"point", w.point.str()},
                              {"left", w.left_value},
                              {"right", w.right_value},
                              {"signal", mtlk::signal_to_text(w.signal)}};
        out.text << "not equivalent: signal " << w.signal_index << " at " << w.point.str()
                 << " left=" << w.left_value << " right=" << w.right_value << "\n"
                 << mtlk::signal_to_text(w.signal);
      }
      return out.emit(rep.equivalent ? kOk : kCounterexample);
    } else if (fuzz->parsed()) {
      return out.emit(report_campaign(mtlk::run_campaign(fuzz_args.config()), corpus_dir, out));
    } else if (record->parsed()) {
      return out.emit(report_campaign(mtlk::run_campaign(rec_args.config()), dir, out));
    } else if (replay->parsed()) {
      mtlk::Corpus c(dir);
      auto ids = c.list();
      int drift = 0;
      out.doc["cases"] = ids.size();
      out.doc["drift"] = ordered_json::array();
      for (const auto& id : ids) {
        mtlk::RegressionCase rc = c.load(id);
        std::string got = mtlk::replay_verdict(rc);
        if (got != rc.expected) {
          ++drift;
          out.doc["drift"].push_back({{"id", id}, {"expected", rc.expected}, {"got", got}});
          out.text << "drift [" << id << "] expected " << rc.expected << " got " << got << "\n";
        }
      }
      out.text << ids.size() << " cases, " << drift << " drifted\n";
      return out.emit(drift == 0 ? kOk : kCounterexample);
    } else if (list->parsed()) {
      auto ids = mtlk::Corpus(dir).list();
      out.doc["ids"] = ids;
      for (const auto& id : ids) out.text << id << "\n";
    }
  } catch (const mtlk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return out.emit(kOk);
}
