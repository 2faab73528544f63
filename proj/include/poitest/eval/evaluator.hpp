// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Tree-walking evaluator. No tail calls are eliminated: every active call
/// holds a native frame, so the evaluator runs on a dedicated thread with a
/// large stack and reports `system_limit` before that stack is exhausted.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "poitest/eval/runtime_error.hpp"
#include "poitest/eval/trace_event.hpp"
#include "poitest/eval/value.hpp"
#include "poitest/syntax/ast.hpp"

namespace poitest::eval {

inline constexpr std::int64_t kDefaultStepBudget = 5'000'000;

/// kDefaultStepBudget unless POITEST_STEP_BUDGET holds a positive integer.
std::int64_t default_step_budget();

struct Budget {
  std::int64_t max_steps = default_step_budget();
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Set of modules one ITC runs against; the first module holds the input
/// functions. Cheap to copy.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<syntax::SourceModule> modules);

  const std::vector<syntax::SourceModule>& modules() const;
  const syntax::SourceModule& main() const { return modules().front(); }
  const syntax::SourceModule* find_module(std::string_view name) const;
  const syntax::FunDef* find_function(std::string_view module, std::string_view name, int arity) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

struct EvalOutcome {
  std::optional<Value> result;
  std::optional<RuntimeError> error;
  std::vector<TraceEvent> events;
  std::int64_t steps_used = 0;

  bool ok() const { return result.has_value(); }
  bool timed_out() const { return error && error->is_timeout(); }
};

/// Runs `fn(args...)` from the program's main module.
EvalOutcome eval_itc(const Program& program, const FunctionId& fn, const std::vector<Value>& args,
                     const Budget& budget = {});

/// Reference source for one run; every value it returns is distinct.
class RefGenerator {
 public:
  Value next(bool synthetic = false) { return Value::ref(synthetic ? ++synthetic_ : ++user_, synthetic); }

 private:
  std::uint64_t user_ = 0;
  std::uint64_t synthetic_ = 0;
};

}  // namespace poitest::eval
