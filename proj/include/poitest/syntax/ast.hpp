// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Position-indexed AST for MiniFun.
///
/// Nodes are immutable and shared (`std::shared_ptr<const Expr>`), so
/// instrumentation rebuilds only the spine above a rewritten node and shares
/// every untouched subtree with the original module. Patterns and guards are
/// stored as ordinary expressions in dedicated slots (`Clause::patterns`,
/// `Clause::guards`, the left child of `Match`, generator patterns) and are
/// never POI candidates.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poitest/syntax/poi.hpp"

namespace poitest::syntax {

struct SourcePos {
  int line = 0;
  int column = 0;
  int node_id = -1;
};

enum class ExprKind : std::uint8_t {
  Integer,
  String,
  Atom,
  Var,
  List,
  Tuple,
  BinOp,
  UnOp,
  Call,
  Remote,  // `m:f` in callee position, evaluates to {m,f}
  FunRef,  // `fun name/arity` or `fun m:name/arity`
  Lambda,
  Case,
  If,
  Match,
  ListComp,
  Try,
  Block,
  TraceEmit,
};

/// Tag name used in POI literals for an expression kind ("call", "case", ...).
std::string kind_tag(ExprKind kind);

enum class TraceTag : std::uint8_t { AddI, Add, AddRef, Begin, End };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Clause {
  std::vector<ExprPtr> patterns;
  /// Disjunction (`;`) of conjunctions (`,`). Empty means no guard.
  std::vector<std::vector<ExprPtr>> guards;
  std::vector<ExprPtr> body;
  SourcePos pos;
};

struct Qualifier {
  bool generator = false;  // `P <- E` when true, filter expression otherwise
  ExprPtr pattern;         // generators only
  ExprPtr expr;
};

/// Data carried by a trace-emit node besides its evaluated arguments.
struct EmitInfo {
  TraceTag tag = TraceTag::Add;
  Poi poi;                          // add_i / add / add-with-ref
  Frame frame;                      // begin
  FrameOrigin origin = FrameOrigin::CallSite;
  std::optional<FunctionId> callee;  // begin at a call site with a static callee
};

struct Expr {
  ExprKind kind = ExprKind::Atom;
  SourcePos pos;

  std::int64_t integer = 0;  // Integer value; FunRef arity
  std::string text;          // Atom/Var name, operator, String bytes, FunRef name
  std::string module;        // FunRef module (empty = local)

  /// Kind-dependent children:
  ///   List: elements (tail in `tail`); Tuple: elements; BinOp: [lhs, rhs];
  ///   UnOp: [operand]; Call: [callee, args...]; Remote: [module, function];
  ///   Match: [pattern, value]; Case: [scrutinee]; ListComp: [head];
  ///   Block / Try: body sequence; TraceEmit: evaluated arguments.
  std::vector<ExprPtr> children;
  ExprPtr tail;
  std::vector<Clause> clauses;  // Case, If, Lambda, Try (catch clauses)
  std::vector<Qualifier> qualifiers;
  std::optional<EmitInfo> emit;

  /// Introduced by instrumentation and invisible to POI resolution and to
  /// call-site stack tracing.
  bool synthetic = false;
  /// Set on the node an instrumentation pass wrapped.
  bool instrumented = false;
  /// Static callee of a call whose callee expression was hoisted into a
  /// variable by call-POI instrumentation.
  std::optional<FunctionId> callee_hint;
};

/// Parameter type from a `-spec` attribute.
struct TypeExpr {
  enum class Kind { Integer, NonNegInteger, PosInteger, Atom, Boolean, Any, String, List, Tuple, Literal };
  Kind kind = Kind::Any;
  std::vector<TypeExpr> children;  // List: [element]; Tuple: elements
  std::string literal;             // Literal atom
};

struct FunSpec {
  std::vector<TypeExpr> params;
  TypeExpr result;
};

struct FunDef {
  std::string name;
  int arity = 0;
  std::vector<Clause> clauses;
  std::optional<FunSpec> spec;
  SourcePos pos;

  FunctionId id() const { return FunctionId{name, arity}; }
};

struct SourceModule {
  std::string name;
  std::string source_path;
  std::vector<FunctionId> exports;
  std::vector<FunDef> functions;
  /// Next unused node id; instrumentation allocates from here upwards.
  int next_node_id = 0;
  /// Counter for fresh `__poi_` variables.
  int fresh_counter = 0;

  const FunDef* find_function(const std::string& name, int arity) const;
};

/// Prefix reserved for variables introduced by instrumentation.
inline constexpr const char* kReservedVarPrefix = "__poi_";

std::string to_string(const TypeExpr& type);

/// Reads a POI literal `{Module, Line, Kind[, Occurrence]}`; Module is an atom
/// or string, Kind an atom or `{var, Name}`. Throws SyntaxError located at the
/// literal.
Poi poi_from_literal(const Expr& e, const std::string& path = {});

/// Reads a frame literal `{Module, Function, Arity, {line, Line}}`.
Frame frame_from_literal(const Expr& e, const std::string& path = {});

// Node constructors. Every node gets the given position; node ids are assigned
// by the caller.
namespace make {
ExprPtr integer(std::int64_t value, SourcePos pos);
ExprPtr atom(std::string name, SourcePos pos);
ExprPtr var(std::string name, SourcePos pos);
ExprPtr tuple(std::vector<ExprPtr> elems, SourcePos pos);
ExprPtr list(std::vector<ExprPtr> elems, ExprPtr tail, SourcePos pos);
ExprPtr call(ExprPtr callee, std::vector<ExprPtr> args, SourcePos pos);
ExprPtr remote(ExprPtr mod, ExprPtr fun, SourcePos pos);
ExprPtr match(ExprPtr pattern, ExprPtr value, SourcePos pos);
ExprPtr block(std::vector<ExprPtr> body, SourcePos pos);
}  // namespace make

/// Structural equality ignoring positions, node ids and instrumentation flags.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const SourceModule& a, const SourceModule& b);

/// Visits every node of the module in preorder, including patterns and guards.
/// The callback receives the node and whether it sits in an expression
/// position (false inside patterns and guards).
template <typename Fn>
void for_each_node(const SourceModule& m, Fn&& fn);

namespace detail {
template <typename Fn>
void visit(const ExprPtr& e, bool expr_pos, Fn& fn);

template <typename Fn>
void visit_clause(const Clause& c, bool expr_pos, Fn& fn) {
  for (const auto& p : c.patterns) visit(p, false, fn);
  for (const auto& conj : c.guards)
    for (const auto& g : conj) visit(g, false, fn);
  for (const auto& b : c.body) visit(b, expr_pos, fn);
}

template <typename Fn>
void visit(const ExprPtr& e, bool expr_pos, Fn& fn) {
  if (!e) return;
  fn(*e, expr_pos);
  switch (e->kind) {
    case ExprKind::Match:
      visit(e->children[0], false, fn);
      visit(e->children[1], expr_pos, fn);
      break;
    case ExprKind::ListComp:
      visit(e->children[0], expr_pos, fn);
      for (const auto& q : e->qualifiers) {
        if (q.generator) visit(q.pattern, false, fn);
        visit(q.expr, expr_pos, fn);
      }
      break;
    default:
      for (const auto& c : e->children) visit(c, expr_pos, fn);
      visit(e->tail, expr_pos, fn);
      for (const auto& c : e->clauses) visit_clause(c, expr_pos, fn);
      break;
  }
}
}  // namespace detail

template <typename Fn>
void for_each_node(const SourceModule& m, Fn&& fn) {
  for (const auto& f : m.functions)
    for (const auto& c : f.clauses) detail::visit_clause(c, true, fn);
}

}  // namespace poitest::syntax
