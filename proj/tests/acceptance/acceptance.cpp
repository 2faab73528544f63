// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

// Prints one PASS/FAIL line per acceptance criterion.
//
//   acceptance [--expect-fail N[,N...]]
//
// Without the flag the exit status is 0 only when every criterion passes.
// With it, the status is 0 when the failing criteria are exactly the listed
// ones, so a known failure stays visible and a fixed one is noticed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "laws.hpp"
#include "poitest/report/config.hpp"
#include "poitest/testgen/testgen.hpp"

using namespace poitest;
using testing_support::corpus_module;
using tracer::AitElement;
using tracer::TraceElement;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) detail = what;
    else detail += "; " + what;
    pass = false;
  }
};

std::string config_path(const std::string& file) { return std::string(POITEST_CONFIG_DIR) + "/" + file; }

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

const TraceElement* te_of(const std::optional<AitElement>& e) {
  return e ? std::get_if<TraceElement>(&*e) : nullptr;
}

// Values of one side's TEs on `poi` up to and including the diverging one.
std::string side_trace(const compare::UbFinding& f, bool old_side) {
  std::vector<eval::Value> vs;
  const Poi& poi = old_side ? f.old_poi : f.new_poi;
  for (const auto& [o, n] : f.history)
    if (const auto* t = std::get_if<TraceElement>(old_side ? &o : &n); t && t->poi == poi) vs.push_back(t->value);
  if (const auto* t = te_of(old_side ? f.old_te : f.new_te)) vs.push_back(t->value);
  return eval::to_string(eval::Value::list(vs));
}

std::string args_of(const std::optional<AitElement>& e) {
  const auto* t = te_of(e);
  if (!t || !t->ca) return "<none>";
  return eval::to_string(eval::Value::list(t->ca->args));
}

int merge_frames(const std::optional<AitElement>& e) {
  const auto* t = te_of(e);
  if (!t || !t->st) return -1;
  int n = 0;
  for (const auto& fr : *t->st) n += fr.function == "merge" && fr.arity == 3;
  return n;
}

struct Setup {
  report::ConfigFile cfg;
  std::optional<testgen::Harness> harness;
};

Setup setup(const std::string& cfg_file, const std::string& old_file, const std::string& new_file,
            const std::string& rel, const std::optional<std::string>& mode) {
  Setup s{report::load_config(config_path(cfg_file)), std::nullopt};
  auto cfg = mode ? s.cfg.config(*mode) : compare::build_mode_config(compare::Mode::Nuai);
  s.harness.emplace(std::vector{corpus_module(old_file)}, std::vector{corpus_module(new_file)}, s.cfg.relation(rel),
                    cfg);
  return s;
}

// Single finding of the replayed ITC, or a failed verdict.
const compare::UbFinding* single_finding(const testgen::Harness::Outcome& out, const std::string& type, Verdict& v) {
  v.require(out.findings.size() == 1, std::to_string(out.findings.size()) + " findings instead of 1");
  if (out.findings.empty()) return nullptr;
  v.require(out.findings[0].ub_type == type, "type " + out.findings[0].ub_type + " instead of " + type);
  return &out.findings[0];
}

const char* kAlignOld =
    R"([[["Given ","a          ","text ","file   ","of     ","many     ","lines      ","where ","fields ","within  ","a ","line "],["are   ","delineated ","by   ","a      ","single ","'dollar' ","character, ","write ","a      ","program ","  ","     "],["that  ","aligns     ","each ","column ","of     ","fields   ","           ","      ","       ","        ","  ","     "]]])";
const char* kAlignNew =
    R"([[["Give","a        ","tex","file ","of   ","many   ","lines    ","wher","field","within",[],"lin"],["are ","delineate","by ","a    ","singl","'dollar","character","writ","a    ","progra",[],"   "],["that","aligns   ","eac","colum","of   ","fields ","         ","    ","     ","      ",[],"   "]]])";

Verdict criterion1() {
  Verdict v;
  auto t0 = Clock::now();
  auto s = setup("test_align.cfg", "align_columns_ok.mf", "align_columns.mf", "rel1", std::nullopt);
  testgen::Rng rng(1);
  testgen::CampaignLimits limits;
  limits.timeout_s = 5;
  auto r = testgen::run_campaign(*s.harness, s.cfg.functions("funs"), limits, rng);
  double secs = since(t0);
  const auto& f = r.functions.at(0);
  v.require(f.generated == 1, "generated " + std::to_string(f.generated));
  v.require(f.groups.size() == 1, std::to_string(f.groups.size()) + " UB types");
  if (!f.groups.empty()) {
    const auto& g = f.groups[0];
    v.require(g.ub_type == "different_value", "type " + g.ub_type);
    v.require(g.findings.size() == 1, std::to_string(g.findings.size()) + " findings");
    if (!g.findings.empty()) {
      v.require(side_trace(g.findings[0], true) == kAlignOld, "old trace " + side_trace(g.findings[0], true));
      v.require(side_trace(g.findings[0], false) == kAlignNew, "new trace " + side_trace(g.findings[0], false));
    }
  }
  v.require(secs < 2.0, "took " + fmt_seconds(secs));
  if (v.pass) v.detail = "one different_value finding, both matrices match, " + fmt_seconds(secs);
  return v;
}

Verdict criterion2() {
  Verdict v;
  auto s = setup("test_align.cfg", "align_columns_ok.mf", "align_columns.mf", "rel2", "config");
  auto out = s.harness->run(testgen::parse_itc("align_left()"));
  const std::string expect =
      R"([["Given","a","text","file","of","many","lines","where","fields","within","a","line"],[5,10,4,6,6,8,10,5,6,7,1,4],left])";
  if (const auto* f = single_finding(out, "different_value_same_args", v)) {
    v.require(args_of(f->old_te) == expect, "old args " + args_of(f->old_te));
    v.require(args_of(f->new_te) == expect, "new args " + args_of(f->new_te));
  }
  if (v.pass) v.detail = "different_value_same_args with the expected Args on both sides";
  return v;
}

Verdict criterion3() {
  Verdict v;
  auto s = setup("test_align.cfg", "align_columns_ok.mf", "align_columns.mf", "rel3", "config");
  auto out = s.harness->run(testgen::parse_itc("align_left()"));
  if (const auto* f = single_finding(out, "different_value_different_args", v)) {
    v.require(args_of(f->old_te) == R"([string,left,["Given",11,32]])", "old args " + args_of(f->old_te));
    v.require(args_of(f->new_te) == R"([string,left,["Given",9,32]])", "new args " + args_of(f->new_te));
    v.require(side_trace(*f, true) == R"(["Given      "])", "old trace " + side_trace(*f, true));
    v.require(side_trace(*f, false) == R"(["Given    "])", "new trace " + side_trace(*f, false));
  }
  if (v.pass) v.detail = "different_value_different_args with the expected Args and traces";
  return v;
}

Verdict criterion4() {
  Verdict v;
  auto s = setup("test_mergesort.cfg", "merge_ok.mf", "merge.mf", "rel1", "config");
  auto out = s.harness->run(testgen::parse_itc("mergesortcomp([0,-1,1,2,-3])"));
  if (const auto* f = single_finding(out, "different_value", v)) {
    v.require(side_trace(*f, true) == "[[-1,0],[-3,2],[-3,1,2],[-3,-1,0,1,2]]", "old trace " + side_trace(*f, true));
    v.require(side_trace(*f, false) == "[[-1,0],[-3,2],[-3,1,2],[-3,0,-1,1,2]]", "new trace " + side_trace(*f, false));
    for (bool old_side : {true, false}) {
      const auto* t = te_of(old_side ? f->old_te : f->new_te);
      v.require(t && t->st && t->st->size() == 1, std::string(old_side ? "old" : "new") + " stack is not one frame");
    }
  }
  if (v.pass) v.detail = "traces match and both stacks hold a single frame";
  return v;
}

Verdict criterion5() {
  Verdict v;
  auto s = setup("test_mergesort.cfg", "merge_ok.mf", "merge.mf", "rel2", "config");
  auto out = s.harness->run(testgen::parse_itc("mergesortcomp([5,-6,-6,2,3])"));
  if (const auto* f = single_finding(out, "different_value", v)) {
    v.require(f->history.size() == 4, "diverges at element " + std::to_string(f->history.size() + 1));
    const auto* o = te_of(f->old_te);
    const auto* n = te_of(f->new_te);
    v.require(o && eval::to_string(o->value) == "[2,3,5]", "old value " + (o ? eval::to_string(o->value) : "-"));
    v.require(n && eval::to_string(n->value) == "[-6,3,5]", "new value " + (n ? eval::to_string(n->value) : "-"));
    v.require(merge_frames(f->old_te) == 2, "old merge/3 frames " + std::to_string(merge_frames(f->old_te)));
    v.require(merge_frames(f->new_te) == 1, "new merge/3 frames " + std::to_string(merge_frames(f->new_te)));
  }
  if (v.pass) v.detail = "fifth elements [2,3,5] vs [-6,3,5], merge/3 frames 2 vs 1";
  return v;
}

Verdict criterion6() {
  Verdict v;
  auto s = setup("test_mergesort.cfg", "merge_ok.mf", "merge.mf", "rel1", "config");
  auto funs = s.cfg.functions("funs");
  std::uint64_t seed = std::random_device{}();
  testgen::Rng rng(seed);
  testgen::CampaignLimits timed;
  timed.timeout_s = 5;
  auto r = testgen::run_campaign(*s.harness, funs, timed, rng).functions.at(0);
  double frac = r.generated ? static_cast<double>(r.mismatching) / static_cast<double>(r.generated) : 0;
  v.require(r.generated >= 200, "only " + std::to_string(r.generated) + " ITCs");
  v.require(frac > 0.2 && frac < 0.9, "mismatch fraction " + std::to_string(frac));

  testgen::CampaignLimits fixed;
  fixed.max_itcs = 500;
  auto run_fixed = [&] {
    testgen::Rng g(20260);
    return testgen::run_campaign(*s.harness, funs, fixed, g).functions.at(0);
  };
  auto a = run_fixed();
  auto b = run_fixed();
  bool same = a.generated == b.generated && a.mismatching == b.mismatching && a.failing.size() == b.failing.size() &&
              a.groups.size() == b.groups.size();
  for (std::size_t i = 0; same && i < a.failing.size(); ++i)
    same = testgen::to_string(a.failing[i]) == testgen::to_string(b.failing[i]);
  for (std::size_t i = 0; same && i < a.groups.size(); ++i)
    same = a.groups[i].ub_type == b.groups[i].ub_type && a.groups[i].count == b.groups[i].count;
  v.require(same, "fixed-budget runs differ");
  v.require(a.generated == 500, "fixed run generated " + std::to_string(a.generated));
  char d[200];
  std::snprintf(d, sizeof d, "5 s, seed %llu: %zu ITCs, %zu mismatching (%.1f%%); 500-ITC runs identical (%zu mismatching)",
                static_cast<unsigned long long>(seed), r.generated, r.mismatching, 100 * frac, a.mismatching);
  if (v.pass) v.detail = d;
  return v;
}

bool same_outcome(const eval::EvalOutcome& a, const eval::EvalOutcome& b) {
  if (a.ok() != b.ok()) return false;
  if (a.ok()) return *a.result == *b.result;
  return a.error->error_class() == b.error->error_class();
}

Verdict criterion7() {
  Verdict v;
  auto t0 = Clock::now();
  auto files = testing_support::corpus_files();
  v.require(files.size() >= 20, "corpus has " + std::to_string(files.size()) + " programs");
  std::size_t runs = 0;
  for (const auto& file : files) {
    auto m = corpus_module(file);
    auto pois = testing_support::all_pois(m, file);
    const auto& id = m.exports.at(0);
    const auto* fn = m.find_function(id.name, id.arity);
    testgen::Rng rng(7);
    std::vector<testgen::Itc> itcs;
    for (int i = 0; i < 10; ++i) itcs.push_back(testgen::generate_itc(*fn, rng));
    eval::Program plain({m});
    for (auto cm : {instrument::CallMode::Standard, instrument::CallMode::Enhanced, instrument::CallMode::Ait}) {
      for (auto sm : {instrument::StackMode::Off, instrument::StackMode::Calls, instrument::StackMode::Defs,
                      instrument::StackMode::Both}) {
        eval::Program inst({instrument::apply_plan(m, {pois, cm, sm})});
        for (const auto& itc : itcs) {
          auto a = eval::eval_itc(plain, itc.function, itc.args);
          auto b = eval::eval_itc(inst, itc.function, itc.args);
          ++runs;
          if (!same_outcome(a, b))
            v.require(false, file + " " + testgen::to_string(itc) + " under " + to_string(cm) + "/" + to_string(sm));
        }
      }
    }
  }
  double secs = since(t0);
  v.require(secs < 60, "took " + fmt_seconds(secs));
  if (v.pass)
    v.detail = std::to_string(files.size()) + " programs, " + std::to_string(runs) +
               " instrumented runs with every POI, all 12 plans, " + fmt_seconds(secs);
  return v;
}

Verdict laws(const std::vector<std::pair<std::string, std::function<testing_support::LawResult()>>>& all) {
  Verdict v;
  std::string summary;
  for (const auto& [name, law] : all) {
    auto r = law();
    v.require(r.cases >= 1000, name + " ran " + std::to_string(r.cases) + " cases");
    v.require(r.ok(), name + ": " + std::to_string(r.failures) + " failures, first " + r.first_failure);
    summary += (summary.empty() ? "" : ", ") + name + " " + std::to_string(r.cases);
  }
  if (v.pass) v.detail = summary;
  return v;
}

Verdict criterion8() {
  using namespace testing_support;
  return laws({{"reflexivity", [] { return law_reflexivity(); }},
               {"nuai-in-uai", [] { return law_nuai_implies_uai(); }},
               {"type-split", [] { return law_value_then_args_split(); }},
               {"length-mismatch", [] { return law_length_mismatch_iff(); }}});
}

Verdict criterion9() {
  using namespace testing_support;
  return laws({{"balance", [] { return law_begin_end_balance(); }},
               {"ait-order", [] { return law_ait_ordering(); }},
               {"erasure", [] { return law_enhanced_equals_basic(); }},
               {"unwind", [] { return law_unwind_matches_simulator(); }}});
}

Verdict criterion10() {
  Verdict v;
  auto t0 = Clock::now();
  std::size_t checked = 0;
  const compare::Mode modes[] = {compare::Mode::Nuai,   compare::Mode::NuaiT, compare::Mode::NuaiR,
                                 compare::Mode::NuaiTR, compare::Mode::Uai,   compare::Mode::Ait};
  for (const auto& file : testing_support::corpus_files()) {
    auto m = corpus_module(file);
    auto pois = testing_support::all_pois(m, file);
    const auto& id = m.exports.at(0);
    const auto* fn = m.find_function(id.name, id.arity);
    for (auto mode : modes) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        testgen::Rng rng(seed);
        compare::PoiRelation rel;
        int k = static_cast<int>(std::uniform_int_distribution<int>(1, 3)(rng));
        for (int i = 0; i < k; ++i) {
          const Poi& p = pois[std::uniform_int_distribution<std::size_t>(0, pois.size() - 1)(rng)];
          rel.emplace_back(p, p);
        }
        testgen::Harness h({m}, {m}, rel, compare::build_mode_config(mode));
        auto itc = testgen::generate_itc(*fn, rng);
        auto out = h.run(itc);
        ++checked;
        if (!out.findings.empty())
          v.require(false, file + " " + to_string(mode) + " seed " + std::to_string(seed) + ": " +
                               out.findings[0].ub_type);
      }
    }
  }
  if (v.pass)
    v.detail = std::to_string(checked) + " self-comparisons over 6 modes x 100 seeds, no findings, " +
               fmt_seconds(since(t0));
  return v;
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<std::set<int>> expected_fail;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expected_fail = parse_list(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--expect-fail N[,N...]]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"align step 1 (list comprehension call, NUAI)", criterion1},
      {"align step 2 (prepare_line call, NUAI-TR)", criterion2},
      {"align step 3 (apply call, NUAI-TR)", criterion3},
      {"mergesort step 1 (merge call, NUAI-R with stacks)", criterion4},
      {"mergesort step 2 (case expression, stacks differ)", criterion5},
      {"campaign statistics and reproducibility", criterion6},
      {"instrumentation transparency over the corpus", criterion7},
      {"comparator laws", criterion8},
      {"tracer laws", criterion9},
      {"self-comparison yields no findings", criterion10},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    int n = static_cast<int>(i) + 1;
    if (!v.pass) failed.insert(n);
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << n << " " << criteria[i].first << ": " << v.detail << std::endl;
  }
  if (!expected_fail) return failed.empty() ? 0 : 1;
  if (failed != *expected_fail) {
    std::cout << "failing criteria differ from the expected set" << std::endl;
    return 1;
  }
  return 0;
}
