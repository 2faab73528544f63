// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <exception>
#include <optional>
#include <string>

#include "poitest/eval/value.hpp"

namespace poitest::eval {

struct RuntimeError {
  Value cls;  // error | throw
  Value reason;
  std::optional<syntax::SourcePos> pos;

  /// `badarith`, `badmatch`, `undef`, ...: the reason atom, or the head atom
  /// of a tagged reason tuple. Thrown terms classify as `throw`.
  std::string error_class() const;
  std::string describe() const;
  bool is_timeout() const { return error_class() == "timeout"; }
};

/// In-flight catchable exception.
class Raised : public std::exception {
 public:
  explicit Raised(RuntimeError e) : error(std::move(e)) {}
  const char* what() const noexcept override { return "MiniFun runtime error"; }
  RuntimeError error;
};

/// Budget exhaustion or resource exhaustion; `try ... catch` cannot stop it.
class Aborted : public std::exception {
 public:
  explicit Aborted(RuntimeError e) : error(std::move(e)) {}
  const char* what() const noexcept override { return "MiniFun evaluation aborted"; }
  RuntimeError error;
};

[[noreturn]] void raise_error(Value reason);
[[noreturn]] void raise_error(const char* reason, Value detail);
[[noreturn]] void badarg();

}  // namespace poitest::eval
