// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "laws.hpp"
#include "poitest/errors.hpp"
#include "poitest/eval/evaluator.hpp"
#include "poitest/instrument/instrument.hpp"
#include "poitest/tracer/tracer.hpp"

using namespace poitest;
using namespace poitest::tracer;
using eval::Value;
using testing_support::corpus_module;

namespace {

Poi poi(const std::string& m, int line, const std::string& kind = "call") {
  return Poi{m, line, PoiKind::of(kind), 1};
}

Value I(std::int64_t v) { return Value::integer(v); }
Value R(std::int64_t id) { return Value::ref(static_cast<std::uint64_t>(id), true); }

Value ints(const std::vector<std::int64_t>& xs) {
  std::vector<Value> out;
  for (auto x : xs) out.push_back(I(x));
  return Value::list(out);
}

Begin begin_of(std::int64_t ref, int line, FrameOrigin origin = FrameOrigin::CallSite) {
  return Begin{R(ref), Frame{"t", "f", 0, line}, origin, std::nullopt};
}

eval::EvalOutcome run_instrumented(const std::string& file, const instrument::InstrumentationPlan& plan,
                                   const std::string& fn, std::vector<Value> args) {
  auto m = instrument::apply_plan(corpus_module(file), plan);
  return eval::eval_itc(eval::Program({m}), FunctionId{fn, static_cast<int>(args.size())}, args, {});
}

int count_frames(const std::vector<Frame>& st, const std::string& fn, int arity) {
  int n = 0;
  for (const auto& f : st) n += f.function == fn && f.arity == arity;
  return n;
}

}  // namespace

TEST(Tracer, BasicCollectsAdds) {
  Poi p = poi("t", 1, "op");
  auto t = collect_basic({Add{p, I(1)}, Add{p, I(2)}});
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].value, I(1));
  EXPECT_EQ(t[1].value, I(2));
  EXPECT_FALSE(t[0].ca || t[0].st);
  EXPECT_TRUE(collect_basic({}).empty());
  EXPECT_THROW(collect_basic({AddI{p, R(1), I(1)}}), ProtocolError);
}

TEST(Tracer, EnhancedMergesCalleeAndArgs) {
  Poi p = poi("t", 1);
  auto t = collect_enhanced_call({AddI{p, R(1), Value::atom("f")}, AddI{p, R(1), I(5)}, AddRef{p, R(1), I(25)}});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].value, I(25));
  ASSERT_TRUE(t[0].ca);
  EXPECT_EQ(t[0].ca->callee, Value::atom("f"));
  EXPECT_EQ(t[0].ca->args, std::vector<Value>{I(5)});
  EXPECT_THROW(collect_enhanced_call({AddRef{p, R(1), I(25)}}), ProtocolError);
}

TEST(Tracer, DanglingCallIsDiagnosedNotFatal) {
  Poi p = poi("t", 1);
  auto t = collect({AddI{p, R(1), Value::atom("f")}}, {Collector::EnhancedCall, false});
  EXPECT_TRUE(t.elements.empty());
  EXPECT_EQ(t.diagnostics.size(), 1u);
}

TEST(Tracer, ResultOfOuterCallDiscardsGroupsOfFailedInnerCalls) {
  Poi p = poi("t", 1);
  Poi q = poi("t", 2);
  auto t = collect_enhanced_call(
      {AddI{p, R(1), Value::atom("f")}, AddI{q, R(2), Value::atom("g")}, AddRef{p, R(1), I(3)}});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].poi, p);
}

TEST(Tracer, AitEmitsCalleeArgsBeforeResult) {
  Poi p = poi("t", 1);
  auto t = collect_ait({AddI{p, R(1), Value::atom("f")}, AddI{p, R(1), I(1)}, Add{p, I(9)}});
  ASSERT_EQ(t.size(), 2u);
  const auto& ca = std::get<CalleeArgs>(t[0]);
  EXPECT_EQ(ca.callee, Value::atom("f"));
  EXPECT_EQ(ca.args, std::vector<Value>{I(1)});
  EXPECT_EQ(std::get<TraceElement>(t[1]).value, I(9));
  auto plain = collect_ait({Add{p, I(4)}});
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<TraceElement>(plain[0]));
}

TEST(Tracer, AitBackToBackCallsInterleave) {
  Poi p = poi("t", 1);
  auto t = collect_ait({AddI{p, R(1), Value::atom("f")}, Add{p, I(1)}, AddI{p, R(2), Value::atom("f")},
                        Add{p, I(2)}});
  ASSERT_EQ(t.size(), 4u);
  EXPECT_TRUE(std::holds_alternative<CalleeArgs>(t[0]));
  EXPECT_TRUE(std::holds_alternative<TraceElement>(t[1]));
  EXPECT_TRUE(std::holds_alternative<CalleeArgs>(t[2]));
  EXPECT_TRUE(std::holds_alternative<TraceElement>(t[3]));
}

TEST(Tracer, AitFlushesPendingGroupOnNewReference) {
  Poi p = poi("t", 1);
  Poi q = poi("t", 2);
  auto t = collect_ait({AddI{p, R(1), Value::atom("f")}, AddI{q, R(2), Value::atom("g")}, Add{q, I(1)},
                        Add{p, I(2)}});
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(poi_of(t[0]), p);
  EXPECT_TRUE(std::holds_alternative<CalleeArgs>(t[0]));
  EXPECT_EQ(poi_of(t[1]), q);
  EXPECT_TRUE(std::holds_alternative<CalleeArgs>(t[1]));
  EXPECT_EQ(poi_of(t[3]), p);
}

TEST(Tracer, StackSnapshotOnAdd) {
  Poi p = poi("t", 1, "op");
  auto t = collect_stack({begin_of(1, 7), Add{p, I(1)}, End{R(1)}, Add{p, I(2)}});
  ASSERT_EQ(t.size(), 2u);
  ASSERT_TRUE(t[0].st);
  EXPECT_EQ(*t[0].st, (std::vector<Frame>{Frame{"t", "f", 0, 7}}));
  EXPECT_TRUE(t[1].st->empty());
}

TEST(Tracer, EndOfOuterFrameUnwindsInner) {
  Poi p = poi("t", 1, "op");
  auto t = collect_stack({begin_of(1, 1), begin_of(2, 2), End{R(1)}, Add{p, I(0)}});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t[0].st->empty());
  EXPECT_THROW(collect_stack({End{R(3)}}), ProtocolError);
}

TEST(Tracer, DefinitionFrameShadowsMatchingCallSite) {
  FrameStack s;
  s.begin(Begin{R(1), Frame{"t", "f", 0, 2}, FrameOrigin::CallSite, FunctionId{"g", 1}});
  s.begin(Begin{R(2), Frame{"t", "g", 1, 3}, FrameOrigin::Definition, std::nullopt});
  EXPECT_EQ(s.snapshot(), (std::vector<Frame>{Frame{"t", "g", 1, 3}}));
  FrameStack other;
  other.begin(Begin{R(1), Frame{"t", "f", 0, 2}, FrameOrigin::CallSite, FunctionId{"h", 1}});
  other.begin(Begin{R(2), Frame{"t", "g", 1, 3}, FrameOrigin::Definition, std::nullopt});
  EXPECT_EQ(other.snapshot().size(), 2u);
}

TEST(Tracer, SplitPerPoiIsStable) {
  Poi p1 = poi("t", 1, "op");
  Poi p2 = poi("t", 2, "op");
  auto split = split_per_poi(collect_basic({Add{p1, Value::atom("a")}, Add{p2, Value::atom("b")},
                                            Add{p1, Value::atom("c")}}));
  ASSERT_EQ(split.size(), 2u);
  ASSERT_EQ(split[p1].size(), 2u);
  EXPECT_EQ(split[p1][0].value, Value::atom("a"));
  EXPECT_EQ(split[p1][1].value, Value::atom("c"));
  EXPECT_EQ(split[p2].size(), 1u);
  EXPECT_TRUE(split_per_poi(std::vector<TraceElement>{}).empty());
}

TEST(Tracer, AlignColumnsCallTrace) {
  auto out = run_instrumented("align_columns_ok.mf", {{poi("align_columns_ok.mf", 4)}, {}, {}}, "align_left", {});
  ASSERT_TRUE(out.ok());
  auto t = collect_basic(out.events);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].value, *out.result);
}

TEST(Tracer, PrepareLineCallInfo) {
  auto out = run_instrumented("align_columns_ok.mf",
                              {{poi("align_columns_ok.mf", 14)}, instrument::CallMode::Enhanced, {}},
                              "align_left", {});
  ASSERT_TRUE(out.ok());
  auto t = collect_enhanced_call(out.events);
  ASSERT_EQ(t.size(), 3u);
  ASSERT_TRUE(t[0].ca);
  EXPECT_EQ(eval::to_string(t[0].ca->callee), "prepare_line");
  std::string args;
  for (std::size_t i = 0; i < t[0].ca->args.size(); ++i)
    args += (i ? "," : "") + eval::to_string(t[0].ca->args[i]);
  EXPECT_EQ(args,
            "[\"Given\",\"a\",\"text\",\"file\",\"of\",\"many\",\"lines\",\"where\",\"fields\",\"within\",\"a\","
            "\"line\"],[5,10,4,6,6,8,10,5,6,7,1,4],left");
}

TEST(Tracer, MergesortCallPoiStacks) {
  instrument::InstrumentationPlan old_plan{{poi("merge_ok.mf", 16)}, {}, instrument::StackMode::Calls};
  instrument::InstrumentationPlan new_plan{{poi("merge.mf", 16)}, {}, instrument::StackMode::Calls};
  auto a = collect_stack(run_instrumented("merge_ok.mf", old_plan, "mergesortcomp", {ints({0, -1, 1, 2, -3})}).events);
  auto b = collect_stack(run_instrumented("merge.mf", new_plan, "mergesortcomp", {ints({0, -1, 1, 2, -3})}).events);
  ASSERT_EQ(a.size(), 4u);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(eval::to_string(a[3].value), "[-3,-1,0,1,2]");
  EXPECT_EQ(eval::to_string(b[3].value), "[-3,0,-1,1,2]");
  EXPECT_EQ(a[3].st->size(), 1u);
  EXPECT_EQ(b[3].st->size(), 1u);
}

TEST(Tracer, MergesortCaseStacksDiffer) {
  instrument::InstrumentationPlan old_plan{{poi("merge_ok.mf", 22, "case")}, {}, instrument::StackMode::Calls};
  instrument::InstrumentationPlan new_plan{{poi("merge.mf", 22, "case")}, {}, instrument::StackMode::Calls};
  auto a = collect_stack(run_instrumented("merge_ok.mf", old_plan, "mergesortcomp", {ints({5, -6, -6, 2, 3})}).events);
  auto b = collect_stack(run_instrumented("merge.mf", new_plan, "mergesortcomp", {ints({5, -6, -6, 2, 3})}).events);
  ASSERT_GE(a.size(), 5u);
  ASSERT_GE(b.size(), 5u);
  EXPECT_EQ(eval::to_string(a[4].value), "[2,3,5]");
  EXPECT_EQ(eval::to_string(b[4].value), "[-6,3,5]");
  EXPECT_EQ(count_frames(*a[4].st, "merge", 3), 2);
  EXPECT_EQ(count_frames(*b[4].st, "merge", 3), 1);
}

TEST(TracerLaws, BeginEndBalanceOnCompletedRuns) {
  auto r = testing_support::law_begin_end_balance();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
  EXPECT_EQ(r.cases, 1000);
}

TEST(TracerLaws, AitCalleeArgsPrecedeResults) {
  auto r = testing_support::law_ait_ordering();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(TracerLaws, EnhancedEqualsBasicAfterErasure) {
  auto r = testing_support::law_enhanced_equals_basic();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(TracerLaws, UnwindMatchesBruteForceSimulator) {
  auto r = testing_support::law_unwind_matches_simulator();
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
  EXPECT_GT(r.exercised, 1000);
}
