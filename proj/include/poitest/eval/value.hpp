// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Runtime values of MiniFun.
///
/// Lists are cons cells shared between values, so `[H | T]` and tail
/// selection are O(1). Atoms are interned and compare by pointer.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "poitest/syntax/ast.hpp"

namespace poitest::eval {

struct Atom {
  const std::string* name = nullptr;
};

struct Ref {
  std::uint64_t id = 0;
  /// Minted by instrumentation; numbered separately so user-visible
  /// references are the same with and without tracing.
  bool synthetic = false;
};

class Value;
struct Cons;
struct Closure;
using ListPtr = std::shared_ptr<const Cons>;  // nullptr is []
using TuplePtr = std::shared_ptr<const std::vector<Value>>;
using FunPtr = std::shared_ptr<const Closure>;

class Value {
 public:
  Value() : rep_(std::int64_t{0}) {}

  static Value integer(std::int64_t v) { return Value(Rep(v)); }
  static Value atom(std::string_view name);
  static Value boolean(bool b) { return atom(b ? "true" : "false"); }
  static Value nil() { return Value(Rep(ListPtr())); }
  static Value cons(Value head, Value tail);
  static Value list(const std::vector<Value>& elems, Value tail = nil());
  /// List of code points decoded from UTF-8.
  static Value string(std::string_view utf8);
  static Value tuple(std::vector<Value> elems);
  static Value ref(std::uint64_t id, bool synthetic = false) { return Value(Rep(Ref{id, synthetic})); }
  static Value fun(FunPtr f) { return Value(Rep(std::move(f))); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(rep_); }
  bool is_atom() const { return std::holds_alternative<Atom>(rep_); }
  bool is_atom(std::string_view name) const { return is_atom() && atom_name() == name; }
  bool is_list() const { return std::holds_alternative<ListPtr>(rep_); }
  bool is_nil() const { return is_list() && !std::get<ListPtr>(rep_); }
  bool is_cons() const { return is_list() && std::get<ListPtr>(rep_); }
  bool is_tuple() const { return std::holds_alternative<TuplePtr>(rep_); }
  bool is_fun() const { return std::holds_alternative<FunPtr>(rep_); }
  bool is_ref() const { return std::holds_alternative<Ref>(rep_); }
  bool is_boolean() const { return is_atom("true") || is_atom("false"); }

  std::int64_t as_int() const { return std::get<std::int64_t>(rep_); }
  const std::string& atom_name() const { return *std::get<Atom>(rep_).name; }
  const Value& head() const;
  const Value& tail() const;
  const std::vector<Value>& elements() const { return *std::get<TuplePtr>(rep_); }
  const Closure& closure() const { return *std::get<FunPtr>(rep_); }
  Ref as_ref() const { return std::get<Ref>(rep_); }

  /// Elements of a proper list. Throws std::invalid_argument on improper lists.
  std::vector<Value> to_vector() const;
  bool is_proper_list() const;
  std::size_t length() const;

  /// Erlang term order: integer < atom < reference < fun < tuple < list.
  friend int compare(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

 private:
  using Rep = std::variant<std::int64_t, Atom, Ref, FunPtr, TuplePtr, ListPtr>;
  explicit Value(Rep r) : rep_(std::move(r)) {}
  Rep rep_;
  friend std::size_t hash_value(const Value& v);
  friend struct Cons;
};

struct Cons {
  Value head;
  Value tail;
  ~Cons();
};

using Env = std::vector<std::pair<std::string, Value>>;

/// A lambda with its captured environment, or a reference to a named function.
struct Closure {
  enum class Kind { Lambda, FunRef };
  Kind kind = Kind::Lambda;
  std::string module;       // defining module, or target module of a FunRef
  syntax::ExprPtr lambda;   // Lambda only
  Env env;                  // Lambda only
  std::string name;         // FunRef only
  int arity = 0;
};

/// MiniFun literal syntax. Non-empty lists of printable ASCII print as strings.
/// Erlang term order: negative, zero or positive.
int compare(const Value& a, const Value& b);

std::string to_string(const Value& v);

/// True when `v` is a non-empty list of codes 32..126.
bool is_printable_string(const Value& v);

/// UTF-8 encoding of a proper list of code points; false if `v` is not one.
bool list_to_utf8(const Value& v, std::string& out);

std::size_t hash_value(const Value& v);

}  // namespace poitest::eval
