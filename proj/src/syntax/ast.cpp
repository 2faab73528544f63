// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/syntax/ast.hpp"

#include "poitest/errors.hpp"

namespace poitest::syntax {

std::string kind_tag(ExprKind kind) {
  switch (kind) {
    case ExprKind::Integer: return "integer";
    case ExprKind::String: return "string";
    case ExprKind::Atom: return "atom";
    case ExprKind::Var: return "var";
    case ExprKind::List: return "list";
    case ExprKind::Tuple: return "tuple";
    case ExprKind::BinOp:
    case ExprKind::UnOp: return "op";
    case ExprKind::Call: return "call";
    case ExprKind::Remote: return "remote";
    case ExprKind::FunRef:
    case ExprKind::Lambda: return "fun";
    case ExprKind::Case: return "case";
    case ExprKind::If: return "if";
    case ExprKind::Match: return "match";
    case ExprKind::ListComp: return "lc";
    case ExprKind::Try: return "try";
    case ExprKind::Block: return "block";
    case ExprKind::TraceEmit: return "trace";
  }
  return "unknown";
}

const FunDef* SourceModule::find_function(const std::string& fname, int arity) const {
  for (const auto& f : functions)
    if (f.name == fname && f.arity == arity) return &f;
  return nullptr;
}

std::string to_string(const TypeExpr& type) {
  auto join = [](const std::vector<TypeExpr>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + to_string(xs[i]);
    return out;
  };
  switch (type.kind) {
    case TypeExpr::Kind::Integer: return "integer()";
    case TypeExpr::Kind::NonNegInteger: return "non_neg_integer()";
    case TypeExpr::Kind::PosInteger: return "pos_integer()";
    case TypeExpr::Kind::Atom: return "atom()";
    case TypeExpr::Kind::Boolean: return "boolean()";
    case TypeExpr::Kind::Any: return "any()";
    case TypeExpr::Kind::String: return "string()";
    case TypeExpr::Kind::List: return "[" + join(type.children) + "]";
    case TypeExpr::Kind::Tuple: return "{" + join(type.children) + "}";
    case TypeExpr::Kind::Literal: return quote_atom(type.literal);
  }
  return "any()";
}

namespace {

[[noreturn]] void bad_literal(const Expr& e, const std::string& path, const std::string& what) {
  throw SyntaxError(path, e.pos.line, e.pos.column, what);
}

std::string name_of(const Expr& e, const std::string& path, const char* what) {
  if (e.kind == ExprKind::Atom || e.kind == ExprKind::String || e.kind == ExprKind::Var) return e.text;
  bad_literal(e, path, std::string("expected ") + what);
}

int int_of(const Expr& e, const std::string& path, const char* what) {
  if (e.kind != ExprKind::Integer) bad_literal(e, path, std::string("expected ") + what);
  return static_cast<int>(e.integer);
}

}  // namespace

Poi poi_from_literal(const Expr& e, const std::string& path) {
  if (e.kind != ExprKind::Tuple || e.children.size() < 3 || e.children.size() > 4)
    bad_literal(e, path, "POI literal must be {Module, Line, Kind} or {Module, Line, Kind, Occurrence}");
  Poi p;
  p.module = name_of(*e.children[0], path, "module name in POI");
  p.line = int_of(*e.children[1], path, "line number in POI");
  if (p.line < 1) bad_literal(*e.children[1], path, "POI line must be >= 1");
  const Expr& k = *e.children[2];
  if (k.kind == ExprKind::Atom) {
    p.kind = PoiKind::of(k.text);
  } else if (k.kind == ExprKind::Tuple && k.children.size() == 2 && k.children[0]->kind == ExprKind::Atom &&
             k.children[0]->text == "var") {
    p.kind = PoiKind::var(name_of(*k.children[1], path, "variable name"));
  } else {
    bad_literal(k, path, "POI kind must be an atom or {var, Name}");
  }
  if (e.children.size() == 4) {
    p.occurrence = int_of(*e.children[3], path, "occurrence in POI");
    if (p.occurrence < 1) bad_literal(*e.children[3], path, "POI occurrence must be >= 1");
  }
  return p;
}

Frame frame_from_literal(const Expr& e, const std::string& path) {
  if (e.kind != ExprKind::Tuple || e.children.size() != 4) bad_literal(e, path, "frame must be {M, F, A, {line, L}}");
  Frame f;
  f.module = name_of(*e.children[0], path, "frame module");
  f.function = name_of(*e.children[1], path, "frame function");
  f.arity = int_of(*e.children[2], path, "frame arity");
  const Expr& l = *e.children[3];
  if (l.kind != ExprKind::Tuple || l.children.size() != 2) bad_literal(l, path, "expected {line, L}");
  f.line = int_of(*l.children[1], path, "frame line");
  return f;
}

namespace make {
namespace {
std::shared_ptr<Expr> fresh(ExprKind kind, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->pos = pos;
  return e;
}
}  // namespace

ExprPtr integer(std::int64_t value, SourcePos pos) {
  auto e = fresh(ExprKind::Integer, pos);
  e->integer = value;
  return e;
}
ExprPtr atom(std::string name, SourcePos pos) {
  auto e = fresh(ExprKind::Atom, pos);
  e->text = std::move(name);
  return e;
}
ExprPtr var(std::string name, SourcePos pos) {
  auto e = fresh(ExprKind::Var, pos);
  e->text = std::move(name);
  return e;
}
ExprPtr tuple(std::vector<ExprPtr> elems, SourcePos pos) {
  auto e = fresh(ExprKind::Tuple, pos);
  e->children = std::move(elems);
  return e;
}
ExprPtr list(std::vector<ExprPtr> elems, ExprPtr tail, SourcePos pos) {
  auto e = fresh(ExprKind::List, pos);
  e->children = std::move(elems);
  e->tail = std::move(tail);
  return e;
}
ExprPtr call(ExprPtr callee, std::vector<ExprPtr> args, SourcePos pos) {
  auto e = fresh(ExprKind::Call, pos);
  e->children.push_back(std::move(callee));
  for (auto& a : args) e->children.push_back(std::move(a));
  return e;
}
ExprPtr remote(ExprPtr mod, ExprPtr fun, SourcePos pos) {
  auto e = fresh(ExprKind::Remote, pos);
  e->children = {std::move(mod), std::move(fun)};
  return e;
}
ExprPtr match(ExprPtr pattern, ExprPtr value, SourcePos pos) {
  auto e = fresh(ExprKind::Match, pos);
  e->children = {std::move(pattern), std::move(value)};
  return e;
}
ExprPtr block(std::vector<ExprPtr> body, SourcePos pos) {
  auto e = fresh(ExprKind::Block, pos);
  e->children = std::move(body);
  return e;
}
}  // namespace make

namespace {

bool eq(const ExprPtr& a, const ExprPtr& b);

bool eq_all(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!eq(a[i], b[i])) return false;
  return true;
}

bool eq_clause(const Clause& a, const Clause& b) {
  if (!eq_all(a.patterns, b.patterns) || !eq_all(a.body, b.body) || a.guards.size() != b.guards.size())
    return false;
  for (std::size_t i = 0; i < a.guards.size(); ++i)
    if (!eq_all(a.guards[i], b.guards[i])) return false;
  return true;
}

bool eq_emit(const std::optional<EmitInfo>& a, const std::optional<EmitInfo>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->tag == b->tag && a->poi == b->poi && a->frame == b->frame && a->origin == b->origin &&
         a->callee == b->callee;
}

bool eq(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

}  // namespace

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.integer != b.integer || a.text != b.text || a.module != b.module) return false;
  if (!eq_all(a.children, b.children) || !eq(a.tail, b.tail)) return false;
  if (a.clauses.size() != b.clauses.size() || a.qualifiers.size() != b.qualifiers.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i)
    if (!eq_clause(a.clauses[i], b.clauses[i])) return false;
  for (std::size_t i = 0; i < a.qualifiers.size(); ++i) {
    const auto& qa = a.qualifiers[i];
    const auto& qb = b.qualifiers[i];
    if (qa.generator != qb.generator || !eq(qa.pattern, qb.pattern) || !eq(qa.expr, qb.expr)) return false;
  }
  return eq_emit(a.emit, b.emit);
}

bool structurally_equal(const SourceModule& a, const SourceModule& b) {
  if (a.name != b.name || a.exports != b.exports || a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const FunDef& fa = a.functions[i];
    const FunDef& fb = b.functions[i];
    if (fa.name != fb.name || fa.arity != fb.arity || fa.clauses.size() != fb.clauses.size()) return false;
    if (fa.spec.has_value() != fb.spec.has_value()) return false;
    if (fa.spec) {
      if (to_string(fa.spec->result) != to_string(fb.spec->result) ||
          fa.spec->params.size() != fb.spec->params.size())
        return false;
      for (std::size_t k = 0; k < fa.spec->params.size(); ++k)
        if (to_string(fa.spec->params[k]) != to_string(fb.spec->params[k])) return false;
    }
    for (std::size_t k = 0; k < fa.clauses.size(); ++k)
      if (!eq_clause(fa.clauses[k], fb.clauses[k])) return false;
  }
  return true;
}

}  // namespace poitest::syntax
