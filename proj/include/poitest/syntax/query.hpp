// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "poitest/syntax/ast.hpp"

namespace poitest::syntax {

/// Node ids of the expressions of `kind` starting on `line`, by column (outer
/// before inner on ties). Patterns, guards, static callee names and nodes
/// introduced by instrumentation are never returned.
std::vector<int> find_expressions(const SourceModule& m, int line, const PoiKind& kind);

/// Node with the given id, or nullptr.
const Expr* find_node(const SourceModule& m, int node_id);

}  // namespace poitest::syntax
