// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/eval/runtime_error.hpp"

namespace poitest::eval {

std::string RuntimeError::error_class() const {
  if (cls.is_atom("throw")) return "throw";
  if (reason.is_atom()) return reason.atom_name();
  if (reason.is_tuple() && !reason.elements().empty() && reason.elements()[0].is_atom())
    return reason.elements()[0].atom_name();
  return "error";
}

std::string RuntimeError::describe() const {
  std::string out = to_string(cls) + ":" + to_string(reason);
  if (pos) out += " at line " + std::to_string(pos->line);
  return out;
}

void raise_error(Value reason) { throw Raised(RuntimeError{Value::atom("error"), std::move(reason), std::nullopt}); }

void raise_error(const char* reason, Value detail) {
  raise_error(Value::tuple({Value::atom(reason), std::move(detail)}));
}

void badarg() { raise_error(Value::atom("badarg")); }

}  // namespace poitest::eval
