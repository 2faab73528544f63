// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>

namespace poitest {

/// Expression kind selector of a POI: `call`, `'case'`, `{var,'X'}`, ...
struct PoiKind {
  std::string tag;
  std::string var_name;  // only for tag == "var"

  static PoiKind of(std::string tag) { return PoiKind{std::move(tag), {}}; }
  static PoiKind var(std::string name) { return PoiKind{"var", std::move(name)}; }

  auto operator<=>(const PoiKind&) const = default;
};

/// One expression occurrence in one source file.
struct Poi {
  std::string module;  // file name or module name as written by the user
  int line = 0;
  PoiKind kind;
  int occurrence = 1;

  auto operator<=>(const Poi&) const = default;
};

/// Renders `{'merge.mf',16,call,1}`.
std::string to_string(const Poi& poi);
std::string to_string(const PoiKind& kind);

/// Atom rendering with quotes when the atom is not a plain lowercase name or is
/// a reserved word.
std::string quote_atom(const std::string& name);

enum class FrameOrigin { CallSite, Definition };

/// Stack frame descriptor rendered as `{merge_ok,merge,3,{line,25}}`.
struct Frame {
  std::string module;
  std::string function;
  int arity = 0;
  int line = 0;

  auto operator<=>(const Frame&) const = default;
};

std::string to_string(const Frame& frame);

/// `name/arity`, used for input functions and static callee hints.
struct FunctionId {
  std::string name;
  int arity = 0;

  auto operator<=>(const FunctionId&) const = default;
};

std::string to_string(const FunctionId& id);

}  // namespace poitest
