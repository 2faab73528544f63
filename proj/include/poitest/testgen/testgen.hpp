// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Test-input generation and the campaign loop that runs both versions on
/// each input and compares their traces.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "poitest/compare/compare.hpp"
#include "poitest/eval/evaluator.hpp"
#include "poitest/instrument/instrument.hpp"
#include "poitest/syntax/ast.hpp"

namespace poitest::testgen {

using eval::Value;
using Rng = std::mt19937_64;

class UnknownInputFunction : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NoMutableArgs : public Error {
 public:
  using Error::Error;
};

enum class MutationOp { IntNudge, Insert, Delete, Duplicate, Shuffle, Replace, Truncate };
std::string to_string(MutationOp op);

struct Itc {
  FunctionId function;
  std::vector<Value> args;
  /// Mutation that produced this ITC from its parent, if any.
  std::optional<MutationOp> mutation;
  std::optional<std::string> parent;
};

/// `f(a1,...,an)` in MiniFun call syntax.
std::string to_string(const Itc& itc);
/// Reads a call written by to_string. Throws SyntaxError.
Itc parse_itc(const std::string& text);

/// Random value of a spec type. Integers default to [-10, 10], lists to
/// length [0, 8].
Value generate_value(const syntax::TypeExpr& type, Rng& rng);
/// Integers, atoms and shallow lists/tuples.
Value generate_universal(Rng& rng, int depth = 0);

/// One ITC per function: the single call for zero-arity functions, random
/// arguments otherwise. Throws UnknownInputFunction when `m` lacks a function.
std::vector<Itc> generate_initial_itcs(const syntax::SourceModule& m, const std::vector<FunctionId>& funs,
                                       Rng& rng);
Itc generate_itc(const syntax::FunDef& f, Rng& rng);

/// Applies one mutation operator to one argument. Inserted or replaced
/// elements follow the `-spec` parameter type when there is one.
Itc mutate_itc(const Itc& itc, Rng& rng, const std::optional<syntax::FunSpec>& spec = std::nullopt);

struct PoolEntry {
  Itc itc;
  std::optional<std::string> ub_type;
};

struct ScheduleWeights {
  double ub = 4.0;
  double ok = 1.0;
};

/// Index of the parent to mutate next, or nullopt when the pool holds nothing
/// mutable (fresh generation is then the only option).
std::optional<std::size_t> schedule_next(const std::vector<PoolEntry>& pool, Rng& rng,
                                         const ScheduleWeights& w = {});

/// Both versions instrumented once, ready to run ITCs.
class Harness {
 public:
  Harness(const std::vector<syntax::SourceModule>& old_modules, const std::vector<syntax::SourceModule>& new_modules,
          const compare::PoiRelation& relation, const compare::ComparisonConfig& cfg,
          std::optional<instrument::StackMode> stack = std::nullopt);

  struct Outcome {
    compare::VersionRun old_run;
    compare::VersionRun new_run;
    std::vector<compare::UbFinding> findings;
    /// Stopped by the campaign deadline rather than the step budget.
    bool interrupted = false;
  };

  Outcome run(const Itc& itc, std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt) const;

  const eval::Program& old_program() const { return old_; }
  const eval::Program& new_program() const { return new_; }
  const instrument::InstrumentationPlan& old_plan() const { return old_plan_; }
  const instrument::InstrumentationPlan& new_plan() const { return new_plan_; }
  const compare::ComparisonConfig& config() const { return cfg_; }
  const compare::PoiRelation& relation() const { return relation_; }
  tracer::CollectOptions collect_options() const { return collect_; }

  std::int64_t step_budget = eval::default_step_budget();

 private:
  eval::Program old_;
  eval::Program new_;
  instrument::InstrumentationPlan old_plan_;
  instrument::InstrumentationPlan new_plan_;
  compare::PoiRelation relation_;
  compare::ComparisonConfig cfg_;
  tracer::CollectOptions collect_;
};

struct UbGroup {
  std::string ub_type;
  std::size_t count = 0;
  Itc example;
  /// Findings of this type for the example ITC.
  std::vector<compare::UbFinding> findings;
};

struct FunctionResult {
  FunctionId function;
  std::size_t generated = 0;
  std::size_t mismatching = 0;
  /// In order of first appearance.
  std::vector<UbGroup> groups;
  std::vector<Itc> failing;
  double elapsed_s = 0;
};

struct CampaignResult {
  std::vector<FunctionResult> functions;
  std::size_t total_mismatching() const;
};

struct CampaignLimits {
  /// Wall-clock budget for each input function.
  std::optional<double> timeout_s;
  /// ITC budget per input function; makes runs reproducible for a fixed seed.
  std::optional<std::size_t> max_itcs;
  /// Probability of generating a fresh ITC instead of mutating a parent.
  double fresh_probability = 0.25;
};

CampaignResult run_campaign(const Harness& harness, const std::vector<FunctionId>& funs,
                            const CampaignLimits& limits, Rng& rng);

/// Runs stored ITCs once each, grouped by function in order of appearance.
CampaignResult replay(const Harness& harness, const std::vector<Itc>& itcs);

/// One ITC per line.
void write_itcs(const std::filesystem::path& path, const std::vector<Itc>& itcs);
std::vector<Itc> read_itcs(const std::filesystem::path& path);

}  // namespace poitest::testgen
