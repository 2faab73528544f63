// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include "poitest/syntax/parser.hpp"
#include "poitest/testgen/testgen.hpp"

namespace poitest::testgen {
namespace {

using syntax::Expr;
using syntax::ExprKind;

[[noreturn]] void not_literal(const Expr& e, const std::string& what) {
  throw SyntaxError({}, e.pos.line, e.pos.column, what);
}

Value literal(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Integer: return Value::integer(e.integer);
    case ExprKind::String: return Value::string(e.text);
    case ExprKind::Atom: return Value::atom(e.text);
    case ExprKind::Tuple: {
      std::vector<Value> xs;
      for (const auto& c : e.children) xs.push_back(literal(*c));
      return Value::tuple(std::move(xs));
    }
    case ExprKind::List: {
      std::vector<Value> xs;
      for (const auto& c : e.children) xs.push_back(literal(*c));
      return Value::list(xs, e.tail ? literal(*e.tail) : Value::nil());
    }
    case ExprKind::UnOp:
      if (e.text == "-" && e.children[0]->kind == ExprKind::Integer) return Value::integer(-e.children[0]->integer);
      break;
    default: break;
  }
  not_literal(e, "ITC arguments must be literal terms");
}

}  // namespace

std::string to_string(MutationOp op) {
  switch (op) {
    case MutationOp::IntNudge: return "int_nudge";
    case MutationOp::Insert: return "insert";
    case MutationOp::Delete: return "delete";
    case MutationOp::Duplicate: return "duplicate";
    case MutationOp::Shuffle: return "shuffle";
    case MutationOp::Replace: return "replace";
    case MutationOp::Truncate: return "truncate";
  }
  return "?";
}

std::string to_string(const Itc& itc) {
  std::string out = quote_atom(itc.function.name) + "(";
  for (std::size_t i = 0; i < itc.args.size(); ++i) out += (i ? "," : "") + eval::to_string(itc.args[i]);
  return out + ")";
}

Itc parse_itc(const std::string& text) {
  syntax::ExprPtr e = syntax::parse_expression(text);
  if (e->kind != ExprKind::Call || e->children[0]->kind != ExprKind::Atom)
    not_literal(*e, "expected a call such as f(1,[2])");
  Itc itc;
  itc.function = FunctionId{e->children[0]->text, static_cast<int>(e->children.size()) - 1};
  for (std::size_t i = 1; i < e->children.size(); ++i) itc.args.push_back(literal(*e->children[i]));
  return itc;
}

void write_itcs(const std::filesystem::path& path, const std::vector<Itc>& itcs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& itc : itcs) out << to_string(itc) << '\n';
}

std::vector<Itc> read_itcs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<Itc> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    out.push_back(parse_itc(line));
  }
  return out;
}

}  // namespace poitest::testgen
