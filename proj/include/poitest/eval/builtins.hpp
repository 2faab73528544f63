// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "poitest/eval/value.hpp"

namespace poitest::eval {

/// Hooks a builtin needs from the running evaluator.
struct BuiltinContext {
  std::function<Value(const Value& fun, std::vector<Value> args)> apply;
  std::function<Value()> make_ref;
};

using BuiltinFn = Value (*)(std::vector<Value>& args, BuiltinContext& ctx);

/// Looks up `module:name/arity`. An empty module or `erlang` selects the
/// auto-imported functions (length/1, apply/3, pad_left/3, ...).
BuiltinFn find_builtin(std::string_view module, std::string_view name, int arity);

/// Calls a first-order builtin by name, e.g. "pad_left" or "lists:zip".
/// Raises `undef` for unknown names and `badarg` on domain violations.
Value builtin_apply(std::string_view name, std::vector<Value> args);

}  // namespace poitest::eval
