// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "poitest/syntax/ast.hpp"

namespace poitest::syntax {

/// Renders a module as MiniFun source. Instrumented modules print with their
/// `tracer ! {...}` emits and `__poi_` variables and re-parse with
/// ParseOptions::allow_instrumentation.
std::string pretty_print(const SourceModule& m);

std::string print_expr(const Expr& e);

/// Double-quoted string literal for UTF-8 bytes.
std::string quote_string(const std::string& bytes);

}  // namespace poitest::syntax
