// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "laws.hpp"
#include "poitest/compare/compare.hpp"
#include "poitest/eval/evaluator.hpp"
#include "poitest/instrument/instrument.hpp"
#include "value_gen.hpp"

using namespace poitest;
using namespace poitest::compare;
using tracer::CalleeArgs;
using tracer::CallArgs;
using tracer::TraceElement;
using testing_support::ValueGen;
using testing_support::laws_detail::mutated;

namespace {

Poi poi(const std::string& m, int line, const std::string& kind = "call") {
  return Poi{m, line, PoiKind::of(kind), 1};
}

const Poi P1 = poi("old", 1, "op");
const Poi P2 = poi("old", 2, "op");
const Poi Q1 = poi("new", 1, "op");
const Poi Q2 = poi("new", 2, "op");

AitElement te(const Poi& p, Value v) { return TraceElement{p, std::move(v), std::nullopt, std::nullopt}; }
AitElement call_te(const Poi& p, Value v, std::vector<Value> args) {
  return TraceElement{p, std::move(v), CallArgs{Value::atom("f"), std::move(args)}, std::nullopt};
}
Value I(std::int64_t v) { return Value::integer(v); }

tracer::Trace run_trace(const std::string& file, const instrument::InstrumentationPlan& plan, const std::string& fn,
                        std::vector<Value> args, tracer::CollectOptions opts) {
  auto m = instrument::apply_plan(testing_support::corpus_module(file), plan);
  auto out = eval::eval_itc(eval::Program({m}), FunctionId{fn, static_cast<int>(args.size())}, args, {});
  return tracer::collect(out.events, opts);
}

Value ints(const std::vector<std::int64_t>& xs) {
  std::vector<Value> out;
  for (auto x : xs) out.push_back(I(x));
  return Value::list(out);
}


}  // namespace

TEST(Compare, IdenticalTracesMatch) {
  auto cfg = build_mode_config(Mode::Nuai);
  std::vector<AitElement> t = {te(P1, I(3)), te(P2, I(4))};
  EXPECT_FALSE(cf_general(t, t, cfg.vef, cfg.tecf));
}

TEST(Compare, PerPoiDifferentValue) {
  auto cfg = build_mode_config(Mode::Nuai);
  auto found = compare_itc({te(P1, I(3)), te(P2, I(4))}, {te(Q1, I(2)), te(Q2, I(4))}, {{P1, Q1}, {P2, Q2}}, cfg);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].ub_type, "different_value");
  EXPECT_EQ(found[0].old_poi, P1);
  EXPECT_EQ(found[0].describe(), "value 3 was expected but value 2 was generated");
}

TEST(Compare, WholeTraceReportsUnexpectedPoi) {
  auto cfg = build_mode_config(Mode::Nuai);
  cfg.granularity = Granularity::Whole;
  auto found = compare_itc({te(P1, I(3)), te(P2, I(4))}, {te(Q2, I(4)), te(Q1, I(2))}, {{P1, Q1}, {P2, Q2}}, cfg);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].ub_type, kUnexpectedPoi);
  EXPECT_EQ(found[0].describe(),
            "a trace from POI {old,1,op,1} was expected but a trace from POI {new,2,op,1} was generated");
}

TEST(Compare, VefRegistry) {
  auto vo = vef_lookup("value_only");
  EXPECT_EQ(vo(call_te(P1, I(7), {I(1)})), I(7));
  EXPECT_EQ(eval::to_string(vo(CalleeArgs{P1, Value::atom("f"), {I(1)}})), "{callee_args,[f,1]}");
  EXPECT_NE(vef_lookup("value_and_ai")(call_te(P1, I(7), {I(1)})), vef_lookup("value_and_ai")(te(P1, I(7))));
  EXPECT_THROW(vef_lookup("nope"), UnknownVef);
  EXPECT_THROW(tecf_lookup("nope"), UnknownTecf);
  EXPECT_THROW(get_te_stack(te(P1, I(1))), MissingAiKey);
  EXPECT_THROW(get_te_args(te(P1, I(1))), MissingAiKey);
  EXPECT_EQ(get_te_args(call_te(P1, I(7), {I(1), I(2)})), (std::vector<Value>{I(1), I(2)}));
}

TEST(Compare, ValueThenArgs) {
  auto vef = vef_lookup("value_only");
  auto tecf = tecf_lookup("value_then_args");
  EXPECT_EQ(tecf(vef, call_te(P1, I(1), {I(5)}), call_te(Q1, I(2), {I(5)})), "different_value_same_args");
  EXPECT_EQ(tecf(vef, call_te(P1, I(1), {I(5)}), call_te(Q1, I(2), {I(6)})), "different_value_different_args");
  EXPECT_EQ(tecf(vef, te(P1, I(1)), te(Q1, I(2))), "different_value");
  EXPECT_FALSE(tecf(vef, call_te(P1, I(1), {I(5)}), call_te(Q1, I(1), {I(6)})));
}

TEST(Compare, PerformanceCompare) {
  auto vef = vef_lookup("value_only");
  auto tecf = tecf_lookup("performance_compare");
  EXPECT_FALSE(tecf(vef, te(P1, I(1)), te(Q1, I(2))));
  EXPECT_EQ(tecf(vef, te(P1, I(2)), te(Q1, I(2))), "same");
  EXPECT_EQ(tecf(vef, te(P1, I(3)), te(Q1, I(2))), "downgrade");
}

TEST(Compare, ModePresets) {
  auto nuai = build_mode_config(Mode::Nuai, "value_then_args");
  EXPECT_EQ(nuai.tecf_name, "equality");
  EXPECT_EQ(nuai.ubrm.fields_for("different_value"), std::vector<ReportField>{ReportField::Val});
  EXPECT_FALSE(nuai.needs_call_info());
  EXPECT_FALSE(nuai.needs_stack());
  Ubrm u;
  u.entries["different_value"] = {ReportField::Val, ReportField::St};
  auto r = build_mode_config(Mode::NuaiR, std::nullopt, u);
  EXPECT_TRUE(r.ubrm.shows("different_value", ReportField::St));
  EXPECT_TRUE(r.needs_stack());
  auto t = build_mode_config(Mode::NuaiT, "value_then_args", u);
  EXPECT_FALSE(t.ubrm.shows("different_value", ReportField::St));
  EXPECT_TRUE(t.needs_call_info());
  auto uai = build_mode_config(Mode::Uai);
  auto found = compare_itc({call_te(P1, I(1), {I(1)})}, {call_te(Q1, I(1), {I(2)})}, {{P1, Q1}}, uai);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].ub_type, "different_value");
  EXPECT_TRUE(compare_itc({call_te(P1, I(1), {I(1)})}, {call_te(Q1, I(1), {I(2)})}, {{P1, Q1}},
                          build_mode_config(Mode::Nuai))
                  .empty());
  EXPECT_THROW(field_from_string("foo"), ConfigError);
  EXPECT_THROW(mode_from_string("strict"), ConfigError);
}

TEST(Compare, EmptyTracesAndRenamedVariables) {
  auto cfg = build_mode_config(Mode::Nuai);
  EXPECT_TRUE(compare_itc({}, {}, {{P1, Q1}}, cfg).empty());
  Poi x{"old", 14, PoiKind::var("X"), 1};
  Poi better{"new", 14, PoiKind::var("BetterName"), 1};
  EXPECT_TRUE(compare_itc({te(x, I(3))}, {te(better, I(3))}, {{x, better}}, cfg).empty());
}

TEST(Compare, OneToManyRelation) {
  auto cfg = build_mode_config(Mode::Nuai);
  auto found = compare_itc({te(P1, I(3))}, {te(Q1, I(3)), te(Q2, I(4))}, {{P1, Q1}, {P1, Q2}}, cfg);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].new_poi, Q2);
}

TEST(Compare, ErrorsAndTruncation) {
  auto cfg = build_mode_config(Mode::Nuai);
  PoiRelation rel = {{P1, Q1}};
  VersionRun ok;
  ok.trace.elements = {te(P1, I(1))};
  VersionRun ok_new;
  ok_new.trace.elements = {te(Q1, I(1))};
  VersionRun crash = ok_new;
  crash.error = eval::RuntimeError{Value::atom("error"), Value::atom("badarith"), std::nullopt};
  auto f = compare_runs(ok, crash, rel, cfg);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].ub_type, "new_error");
  EXPECT_EQ(compare_runs(crash, ok, rel, cfg)[0].ub_type, "old_error");
  VersionRun other = crash;
  other.error->reason = Value::atom("badarg");
  EXPECT_EQ(compare_runs(crash, other, rel, cfg)[0].ub_type, "both_error");
  VersionRun crash_old = crash;
  crash_old.trace.elements = ok.trace.elements;
  EXPECT_TRUE(compare_runs(crash_old, crash, rel, cfg).empty());
  VersionRun cut;
  cut.trace.partial = true;
  EXPECT_EQ(compare_runs(ok, cut, rel, cfg)[0].ub_type, kTraceTruncated);
  VersionRun cut_diff = cut;
  cut_diff.trace.elements = {te(Q1, I(9))};
  EXPECT_EQ(compare_runs(ok, cut_diff, rel, cfg)[0].ub_type, "different_value");
}

TEST(Compare, MergesortCaseStacksClassified) {
  instrument::InstrumentationPlan po{{poi("merge_ok.mf", 22, "case")}, {}, instrument::StackMode::Calls};
  instrument::InstrumentationPlan pn{{poi("merge.mf", 22, "case")}, {}, instrument::StackMode::Calls};
  tracer::CollectOptions opts{tracer::Collector::Basic, true};
  auto a = run_trace("merge_ok.mf", po, "mergesortcomp", {ints({5, -6, -6, 2, 3})}, opts);
  auto b = run_trace("merge.mf", pn, "mergesortcomp", {ints({5, -6, -6, 2, 3})}, opts);
  auto cfg = build_mode_config(Mode::NuaiT, "value_then_stack");
  auto found = compare_itc(a.elements, b.elements, {{po.pois[0], pn.pois[0]}}, cfg);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].ub_type, "diff_value_diff_stack_trace");
  EXPECT_EQ(found[0].history.size(), 4u);
}

TEST(Compare, AitStopsBeforeCalleeInternals) {
  auto src = "-module(t).\nf(N) -> g(N + 1).\ng(X) -> h(X) * 2.\nh(X) -> X + 1.\n";
  auto src2 = "-module(t).\nf(N) -> g(N + 2).\ng(X) -> h(X) * 2.\nh(X) -> X + 1.\n";
  std::vector<Poi> pois = {poi("t", 2), poi("t", 4, "op")};
  instrument::InstrumentationPlan plan{pois, instrument::CallMode::Ait, {}};
  auto trace_of = [&](const char* s) {
    auto m = instrument::apply_plan(syntax::parse_module(s, "t.mf"), plan);
    auto out = eval::eval_itc(eval::Program({m}), FunctionId{"f", 1}, {I(1)}, {});
    return tracer::collect(out.events, {tracer::Collector::Ait, false}).elements;
  };
  auto cfg = build_mode_config(Mode::Ait);
  cfg.granularity = Granularity::Whole;
  auto found = compare_itc(trace_of(src), trace_of(src2), {{pois[0], pois[0]}, {pois[1], pois[1]}}, cfg);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].ub_type, "different_callee_args");
  EXPECT_TRUE(found[0].history.empty());
}

TEST(CompareLaws, Reflexivity) {
  auto r = testing_support::law_reflexivity();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(CompareLaws, NuaiFlagsImplyUaiFlags) {
  auto r = testing_support::law_nuai_implies_uai();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
  EXPECT_GT(r.exercised, 100);
}

TEST(CompareLaws, ValueThenArgsTypeSplitIsSound) {
  auto r = testing_support::law_value_then_args_split();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
  EXPECT_GT(r.exercised, 50);
}

TEST(CompareLaws, LengthMismatchIffLengthsDifferWithEqualPrefix) {
  auto r = testing_support::law_length_mismatch_iff();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
  EXPECT_GT(r.exercised, 100);
}

TEST(CompareLaws, LaterElementsDoNotChangeFinding) {
  auto cfg = build_mode_config(Mode::Nuai);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ValueGen g(seed);
    auto to = g.trace({P1}, false, false, 8);
    auto tn = g.trace({P1}, false, false, 8);
    auto f = cf_general(to, tn, cfg.vef, cfg.tecf);
    if (!f || f->ub_type == kTraceLengthMismatch) continue;
    std::size_t k = f->history.size();
    if (k + 1 >= tn.size()) continue;
    auto tn2 = tn;
    tn2[k + 1] = mutated(tn2[k + 1], g);
    auto f2 = cf_general(to, tn2, cfg.vef, cfg.tecf);
    ASSERT_TRUE(f2);
    EXPECT_EQ(f2->ub_type, f->ub_type);
    EXPECT_EQ(f2->history.size(), k);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}
