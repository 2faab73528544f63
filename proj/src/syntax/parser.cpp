// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/syntax/parser.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "poitest/errors.hpp"

namespace poitest::syntax {
namespace {

std::shared_ptr<Expr> node(ExprKind kind, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->pos = pos;
  return e;
}

bool is_comparison(const Token& t) {
  if (t.kind != TokenKind::Punct) return false;
  return t.text == "==" || t.text == "/=" || t.text == "=<" || t.text == "<" || t.text == ">=" ||
         t.text == ">" || t.text == "=:=" || t.text == "=/=";
}

bool is_op_at(const Token& t, int level) {
  switch (level) {
    case 1: return t.keyword("orelse");
    case 2: return t.keyword("andalso");
    case 3: return is_comparison(t);
    case 4: return t.punct("++") || t.punct("--");
    case 5:
      return t.punct("+") || t.punct("-") || t.keyword("bor") || t.keyword("bxor") || t.keyword("bsl") ||
             t.keyword("bsr") || t.keyword("or") || t.keyword("xor");
    case 6:
      return t.punct("*") || t.punct("/") || t.keyword("div") || t.keyword("rem") || t.keyword("band") ||
             t.keyword("and");
    default: return false;
  }
}

bool right_assoc(int level) { return level == 1 || level == 2 || level == 4; }

// Preorder renumbering in for_each_node order. The parser exclusively owns the
// freshly built nodes, so mutating through the const view is safe here.
void renumber(const ExprPtr& root, int& next) {
  auto assign = [&](const Expr& e, bool) { const_cast<Expr&>(e).pos.node_id = next++; };
  detail::visit(root, true, assign);
}

int renumber(SourceModule& m) {
  int next = 0;
  auto assign = [&](const Expr& e, bool) { const_cast<Expr&>(e).pos.node_id = next++; };
  for_each_node(m, assign);
  return next;
}

}  // namespace

Parser::Parser(std::vector<Token> tokens, std::string path, ParseOptions options)
    : tokens_(std::move(tokens)), path_(std::move(path)), options_(options) {}

bool Parser::at_end() const { return tokens_[pos_].kind == TokenKind::End; }
bool Parser::at_dot() const { return tokens_[pos_].kind == TokenKind::Dot; }

const Token& Parser::next() {
  const Token& t = tokens_[pos_];
  if (t.kind != TokenKind::End) ++pos_;
  return t;
}

bool Parser::accept_punct(std::string_view p) {
  if (peek().punct(p)) {
    next();
    return true;
  }
  return false;
}

bool Parser::accept_keyword(std::string_view k) {
  if (peek().keyword(k)) {
    next();
    return true;
  }
  return false;
}

void Parser::fail_expected(const std::string& expected) const {
  const Token& t = peek();
  throw SyntaxError(path_, t.line, t.column, "expected " + expected + " but found " + describe(t));
}

void Parser::expect_punct(std::string_view p) {
  if (!accept_punct(p)) fail_expected("'" + std::string(p) + "'");
}

void Parser::expect_keyword(std::string_view k) {
  if (!accept_keyword(k)) fail_expected("'" + std::string(k) + "'");
}

void Parser::expect_dot() {
  if (!at_dot()) fail_expected("'.'");
  next();
}

SourcePos Parser::pos_of(const Token& t) { return SourcePos{t.line, t.column, -1}; }

SourceModule Parser::module() {
  SourceModule m;
  m.source_path = path_;
  std::set<FunctionId> seen;
  while (!at_end()) {
    if (peek().punct("-")) {
      attribute(m);
    } else if (peek().kind == TokenKind::Atom) {
      function(m);
      const FunDef& f = m.functions.back();
      if (!seen.insert(f.id()).second)
        throw SyntaxError(path_, f.pos.line, f.pos.column, "duplicate definition of " + to_string(f.id()));
    } else {
      fail_expected("function definition or attribute");
    }
  }
  if (m.name.empty()) m.name = std::filesystem::path(path_).stem().string();
  if (m.name.empty()) m.name = "main";
  for (auto& [id, spec] : pending_specs_) {
    auto it = std::find_if(m.functions.begin(), m.functions.end(),
                           [&](const FunDef& f) { return f.id() == id; });
    if (it == m.functions.end()) throw SyntaxError(path_, 1, 1, "-spec for undefined function " + to_string(id));
    it->spec = std::move(spec);
  }
  pending_specs_.clear();
  m.next_node_id = renumber(m);
  return m;
}

void Parser::attribute(SourceModule& m) {
  expect_punct("-");
  const Token& name = next();
  if (name.kind != TokenKind::Atom) fail_expected("attribute name");
  if (name.text == "module") {
    expect_punct("(");
    const Token& mod = next();
    if (mod.kind != TokenKind::Atom) fail_expected("module name");
    m.name = mod.text;
    expect_punct(")");
    expect_dot();
  } else if (name.text == "export") {
    expect_punct("(");
    expect_punct("[");
    if (!peek().punct("]")) {
      do {
        const Token& f = next();
        if (f.kind != TokenKind::Atom) fail_expected("function name");
        expect_punct("/");
        const Token& a = next();
        if (a.kind != TokenKind::Integer) fail_expected("arity");
        m.exports.push_back(FunctionId{f.text, static_cast<int>(a.integer)});
      } while (accept_punct(","));
    }
    expect_punct("]");
    expect_punct(")");
    expect_dot();
  } else if (name.text == "spec") {
    const Token& f = next();
    if (f.kind != TokenKind::Atom) fail_expected("function name in -spec");
    FunSpec spec;
    expect_punct("(");
    if (!peek().punct(")")) {
      do spec.params.push_back(type_expr());
      while (accept_punct(","));
    }
    expect_punct(")");
    expect_punct("->");
    spec.result = type_expr();
    expect_dot();
    // Specs may precede their function; they are bound once the module is done.
    pending_specs_.push_back({FunctionId{f.text, static_cast<int>(spec.params.size())}, std::move(spec)});
  } else {
    // Unknown attributes (-compile, -vsn, ...) are skipped.
    while (!at_dot() && !at_end()) next();
    expect_dot();
  }
}

TypeExpr Parser::type_expr() {
  TypeExpr t;
  const Token& tok = next();
  if (tok.punct("[")) {
    t.kind = TypeExpr::Kind::List;
    if (!peek().punct("]")) t.children.push_back(type_expr());
    else t.children.push_back(TypeExpr{});
    expect_punct("]");
    return t;
  }
  if (tok.punct("{")) {
    t.kind = TypeExpr::Kind::Tuple;
    if (!peek().punct("}")) {
      do t.children.push_back(type_expr());
      while (accept_punct(","));
    }
    expect_punct("}");
    return t;
  }
  if (tok.kind != TokenKind::Atom) fail_expected("type");
  if (!accept_punct("(")) {
    t.kind = TypeExpr::Kind::Literal;
    t.literal = tok.text;
    return t;
  }
  std::vector<TypeExpr> args;
  if (!peek().punct(")")) {
    do args.push_back(type_expr());
    while (accept_punct(","));
  }
  expect_punct(")");
  const std::string& n = tok.text;
  if (n == "integer") t.kind = TypeExpr::Kind::Integer;
  else if (n == "non_neg_integer") t.kind = TypeExpr::Kind::NonNegInteger;
  else if (n == "pos_integer") t.kind = TypeExpr::Kind::PosInteger;
  else if (n == "atom") t.kind = TypeExpr::Kind::Atom;
  else if (n == "boolean") t.kind = TypeExpr::Kind::Boolean;
  else if (n == "string") t.kind = TypeExpr::Kind::String;
  else if (n == "any" || n == "term") t.kind = TypeExpr::Kind::Any;
  else if (n == "list") {
    t.kind = TypeExpr::Kind::List;
    t.children.push_back(args.empty() ? TypeExpr{} : args[0]);
  } else if (n == "tuple") {
    t.kind = TypeExpr::Kind::Tuple;
    t.children = std::move(args);
  } else {
    throw SyntaxError(path_, tok.line, tok.column, "unknown type " + n + "()");
  }
  return t;
}

void Parser::function(SourceModule& m) {
  FunDef f;
  const Token& first = peek();
  f.name = first.text;
  f.pos = SourcePos{first.line, first.column, -1};
  bool first_clause = true;
  do {
    const Token& name = next();
    if (name.kind != TokenKind::Atom) fail_expected("function name");
    if (name.text != f.name)
      throw SyntaxError(path_, name.line, name.column,
                        "clause for " + name.text + " inside definition of " + f.name);
    Clause c;
    c.pos = SourcePos{name.line, name.column, -1};
    expect_punct("(");
    if (!peek().punct(")")) {
      do c.patterns.push_back(expr());
      while (accept_punct(","));
    }
    expect_punct(")");
    int arity = static_cast<int>(c.patterns.size());
    if (first_clause) {
      f.arity = arity;
      first_clause = false;
    } else if (arity != f.arity) {
      throw SyntaxError(path_, name.line, name.column,
                        "clause arity mismatch for " + f.name + ": expected " + std::to_string(f.arity) +
                            " patterns, found " + std::to_string(arity));
    }
    if (accept_keyword("when")) c.guards = guard();
    expect_punct("->");
    c.body = exprs();
    f.clauses.push_back(std::move(c));
  } while (accept_punct(";"));
  expect_dot();
  m.functions.push_back(std::move(f));
}

std::vector<std::vector<ExprPtr>> Parser::guard() {
  std::vector<std::vector<ExprPtr>> alternatives;
  do {
    std::vector<ExprPtr> conj;
    do conj.push_back(expr());
    while (accept_punct(","));
    alternatives.push_back(std::move(conj));
  } while (accept_punct(";"));
  return alternatives;
}

std::vector<ExprPtr> Parser::exprs() {
  std::vector<ExprPtr> out;
  do out.push_back(expr());
  while (accept_punct(","));
  return out;
}

ExprPtr Parser::expression() {
  ExprPtr e = expr();
  int next = 0;
  renumber(e, next);
  return e;
}

ExprPtr Parser::expr() {
  ExprPtr lhs = binary(1);
  const Token& t = peek();
  if (t.punct("=")) {
    next();
    auto m = node(ExprKind::Match, lhs->pos);
    m->children = {lhs, expr()};
    // Reference bindings of printed instrumentation draw from the synthetic
    // counter, as they did before printing.
    const Expr& rhs = *m->children[1];
    if (lhs->kind == ExprKind::Var && lhs->text.rfind(kReservedVarPrefix, 0) == 0 &&
        rhs.kind == ExprKind::Call && rhs.children.size() == 1 && rhs.children[0]->kind == ExprKind::Atom &&
        rhs.children[0]->text == "make_ref")
      const_cast<Expr&>(rhs).synthetic = true;
    return m;
  }
  if (t.punct("!")) {
    const Token& bang = next();
    ExprPtr msg = expr();
    if (!options_.allow_instrumentation || lhs->kind != ExprKind::Atom || lhs->text != "tracer")
      throw SyntaxError(path_, bang.line, bang.column, "message passing is not supported");
    return emit_expr(bang, msg);
  }
  return lhs;
}

ExprPtr Parser::binary(int level) {
  if (level > 6) return prefix();
  ExprPtr lhs = binary(level + 1);
  while (is_op_at(peek(), level)) {
    const Token& op = next();
    ExprPtr rhs = right_assoc(level) ? binary(level) : binary(level + 1);
    auto b = node(ExprKind::BinOp, lhs->pos);
    b->text = op.text;
    b->children = {lhs, rhs};
    lhs = b;
    if (level == 3 && is_op_at(peek(), 3)) fail_expected("end of comparison (comparisons do not chain)");
    if (right_assoc(level)) break;
  }
  return lhs;
}

ExprPtr Parser::prefix() {
  const Token& t = peek();
  if (t.punct("-") || t.punct("+") || t.keyword("not") || t.keyword("bnot")) {
    const Token& op = next();
    if (op.punct("-") && peek().kind == TokenKind::Integer) {
      const Token& lit = next();
      auto e = node(ExprKind::Integer, pos_of(op));
      e->integer = -lit.integer;
      return e;
    }
    auto e = node(ExprKind::UnOp, pos_of(op));
    e->text = op.text;
    e->children = {prefix()};
    return e;
  }
  return postfix();
}

std::vector<ExprPtr> Parser::call_args() {
  std::vector<ExprPtr> args;
  if (!peek().punct(")")) {
    do args.push_back(expr());
    while (accept_punct(","));
  }
  expect_punct(")");
  return args;
}

ExprPtr Parser::postfix() {
  ExprPtr e = primary();
  for (;;) {
    if (peek().punct(":") && (e->kind == ExprKind::Atom || e->kind == ExprKind::Var)) {
      next();
      const Token& fn = next();
      if (fn.kind != TokenKind::Atom && fn.kind != TokenKind::Var) fail_expected("function name after ':'");
      auto f = node(fn.kind == TokenKind::Atom ? ExprKind::Atom : ExprKind::Var, pos_of(fn));
      f->text = fn.text;
      auto r = node(ExprKind::Remote, e->pos);
      r->children = {e, f};
      if (!peek().punct("(")) fail_expected("'(' after remote function name");
      e = r;
      continue;
    }
    if (peek().punct("(")) {
      next();
      auto c = node(ExprKind::Call, e->pos);
      c->children.push_back(e);
      for (auto& a : call_args()) c->children.push_back(std::move(a));
      e = c;
      continue;
    }
    return e;
  }
}

ExprPtr Parser::primary() {
  const Token& t = next();
  switch (t.kind) {
    case TokenKind::Integer: {
      auto e = node(ExprKind::Integer, pos_of(t));
      e->integer = t.integer;
      if (t.text == "$") e->text = "$";
      return e;
    }
    case TokenKind::String: {
      auto e = node(ExprKind::String, pos_of(t));
      e->text = t.text;
      while (peek().kind == TokenKind::String) e->text += next().text;
      return e;
    }
    case TokenKind::Atom: {
      auto e = node(ExprKind::Atom, pos_of(t));
      e->text = t.text;
      return e;
    }
    case TokenKind::Var: {
      if (!options_.allow_instrumentation && t.text.rfind(kReservedVarPrefix, 0) == 0)
        throw SyntaxError(path_, t.line, t.column,
                          "variable names starting with " + std::string(kReservedVarPrefix) + " are reserved");
      auto e = node(ExprKind::Var, pos_of(t));
      e->text = t.text;
      return e;
    }
    case TokenKind::Punct:
      if (t.text == "(") {
        ExprPtr inner = expr();
        if (!accept_punct(")")) {
          const Token& found = peek();
          throw SyntaxError(path_, found.line, found.column,
                            "unbalanced parenthesis opened at " + std::to_string(t.line) + ":" +
                                std::to_string(t.column) + ": expected ')' but found " + describe(found));
        }
        return inner;
      }
      if (t.text == "[") return list_or_comprehension(t);
      if (t.text == "{") {
        auto e = node(ExprKind::Tuple, pos_of(t));
        if (!peek().punct("}")) {
          do e->children.push_back(expr());
          while (accept_punct(","));
        }
        if (!accept_punct("}")) {
          const Token& found = peek();
          throw SyntaxError(path_, found.line, found.column,
                            "unbalanced brace opened at " + std::to_string(t.line) + ":" +
                                std::to_string(t.column) + ": expected '}' but found " + describe(found));
        }
        return e;
      }
      break;
    case TokenKind::Keyword:
      if (t.text == "fun") return fun_expr(t);
      if (t.text == "case") return case_expr(t);
      if (t.text == "if") return if_expr(t);
      if (t.text == "try") return try_expr(t);
      if (t.text == "begin") {
        auto e = node(ExprKind::Block, pos_of(t));
        e->children = exprs();
        expect_keyword("end");
        return e;
      }
      break;
    default: break;
  }
  --pos_;
  fail_expected("expression");
}

ExprPtr Parser::list_or_comprehension(const Token& open) {
  auto e = node(ExprKind::List, pos_of(open));
  if (accept_punct("]")) return e;
  ExprPtr first = expr();
  if (accept_punct("||")) {
    e->kind = ExprKind::ListComp;
    e->children = {first};
    do {
      ExprPtr q = expr();
      if (accept_punct("<-")) {
        e->qualifiers.push_back(Qualifier{true, q, expr()});
      } else {
        e->qualifiers.push_back(Qualifier{false, nullptr, q});
      }
    } while (accept_punct(","));
    expect_punct("]");
    return e;
  }
  e->children.push_back(first);
  while (accept_punct(",")) e->children.push_back(expr());
  if (accept_punct("|")) e->tail = expr();
  if (!accept_punct("]")) {
    const Token& found = peek();
    throw SyntaxError(path_, found.line, found.column,
                      "unbalanced bracket opened at " + std::to_string(open.line) + ":" +
                          std::to_string(open.column) + ": expected ']' but found " + describe(found));
  }
  return e;
}

Clause Parser::clause_body(Clause c) {
  if (accept_keyword("when")) c.guards = guard();
  expect_punct("->");
  c.body = exprs();
  return c;
}

ExprPtr Parser::fun_expr(const Token& fun_tok) {
  if (peek().kind == TokenKind::Atom) {
    auto e = node(ExprKind::FunRef, pos_of(fun_tok));
    const Token& first = next();
    if (accept_punct(":")) {
      e->module = first.text;
      const Token& name = next();
      if (name.kind != TokenKind::Atom) fail_expected("function name");
      e->text = name.text;
    } else {
      e->text = first.text;
    }
    expect_punct("/");
    const Token& arity = next();
    if (arity.kind != TokenKind::Integer) fail_expected("arity");
    e->integer = arity.integer;
    return e;
  }
  auto e = node(ExprKind::Lambda, pos_of(fun_tok));
  std::size_t arity = 0;
  do {
    const Token& open = peek();
    expect_punct("(");
    Clause c;
    c.pos = SourcePos{open.line, open.column, -1};
    if (!peek().punct(")")) {
      do c.patterns.push_back(expr());
      while (accept_punct(","));
    }
    expect_punct(")");
    if (e->clauses.empty()) arity = c.patterns.size();
    else if (c.patterns.size() != arity)
      throw SyntaxError(path_, open.line, open.column, "fun clauses must all have the same arity");
    e->clauses.push_back(clause_body(std::move(c)));
  } while (accept_punct(";"));
  expect_keyword("end");
  return e;
}

ExprPtr Parser::case_expr(const Token& case_tok) {
  auto e = node(ExprKind::Case, pos_of(case_tok));
  e->children = {expr()};
  expect_keyword("of");
  do {
    Clause c;
    c.pos = SourcePos{peek().line, peek().column, -1};
    c.patterns = {expr()};
    e->clauses.push_back(clause_body(std::move(c)));
  } while (accept_punct(";"));
  expect_keyword("end");
  return e;
}

ExprPtr Parser::if_expr(const Token& if_tok) {
  auto e = node(ExprKind::If, pos_of(if_tok));
  do {
    Clause c;
    c.pos = SourcePos{peek().line, peek().column, -1};
    c.guards = guard();
    expect_punct("->");
    c.body = exprs();
    e->clauses.push_back(std::move(c));
  } while (accept_punct(";"));
  expect_keyword("end");
  return e;
}

ExprPtr Parser::try_expr(const Token& try_tok) {
  auto e = node(ExprKind::Try, pos_of(try_tok));
  e->children = exprs();
  if (peek().keyword("of")) fail_expected("'catch' ('try ... of' is not supported)");
  expect_keyword("catch");
  do {
    Clause c;
    const Token& start = peek();
    c.pos = SourcePos{start.line, start.column, -1};
    const Token& after = tokens_[pos_ + 1];
    if ((start.kind == TokenKind::Var || start.kind == TokenKind::Atom) && after.punct(":")) {
      const Token& cls = next();
      next();
      auto ce = node(cls.kind == TokenKind::Var ? ExprKind::Var : ExprKind::Atom, pos_of(cls));
      ce->text = cls.text;
      c.patterns = {ce, expr()};
    } else {
      auto ce = node(ExprKind::Atom, SourcePos{start.line, start.column, -1});
      ce->text = "throw";
      c.patterns = {ce, expr()};
    }
    e->clauses.push_back(clause_body(std::move(c)));
  } while (accept_punct(";"));
  expect_keyword("end");
  return e;
}

ExprPtr Parser::emit_expr(const Token& at, const ExprPtr& message) {
  auto fail = [&](const std::string& what) -> void {
    throw SyntaxError(path_, at.line, at.column, "malformed trace emit: " + what);
  };
  if (message->kind != ExprKind::Tuple || message->children.empty() ||
      message->children[0]->kind != ExprKind::Atom)
    fail("expected {Tag, ...}");
  const auto& parts = message->children;
  const std::string& tag = parts[0]->text;
  EmitInfo info;
  auto e = node(ExprKind::TraceEmit, message->pos);
  e->synthetic = true;
  if (tag == "add_i" && parts.size() == 4) {
    info.tag = TraceTag::AddI;
    info.poi = poi_from_literal(*parts[1], path_);
    e->children = {parts[2], parts[3]};
  } else if (tag == "add" && parts.size() == 3) {
    info.tag = TraceTag::Add;
    info.poi = poi_from_literal(*parts[1], path_);
    e->children = {parts[2]};
  } else if (tag == "add" && parts.size() == 4) {
    info.tag = TraceTag::AddRef;
    info.poi = poi_from_literal(*parts[1], path_);
    e->children = {parts[2], parts[3]};
  } else if (tag == "begin" && (parts.size() == 4 || parts.size() == 5)) {
    info.tag = TraceTag::Begin;
    info.frame = frame_from_literal(*parts[2], path_);
    if (parts[3]->kind != ExprKind::Atom) fail("expected frame origin atom");
    if (parts[3]->text == "call_site") info.origin = FrameOrigin::CallSite;
    else if (parts[3]->text == "definition") info.origin = FrameOrigin::Definition;
    else fail("unknown frame origin " + parts[3]->text);
    if (parts.size() == 5) {
      const Expr& c = *parts[4];
      if (c.kind != ExprKind::Tuple || c.children.size() != 3 || c.children[1]->kind != ExprKind::Atom ||
          c.children[2]->kind != ExprKind::Integer)
        fail("expected {callee, Name, Arity}");
      info.callee = FunctionId{c.children[1]->text, static_cast<int>(c.children[2]->integer)};
    }
    e->children = {parts[1]};
  } else if (tag == "end" && parts.size() == 2) {
    info.tag = TraceTag::End;
    e->children = {parts[1]};
  } else {
    fail("unknown tag or arity for " + tag);
  }
  e->emit = std::move(info);
  return e;
}

SourceModule parse_module(std::string_view source, const std::string& path, const ParseOptions& options) {
  Parser p(tokenize(source, path), path, options);
  return p.module();
}

ExprPtr parse_expression(std::string_view source, const ParseOptions& options) {
  Parser p(tokenize(source), {}, options);
  ExprPtr e = p.expression();
  if (p.at_dot()) p.expect_dot();
  if (!p.at_end()) {
    const Token& t = p.peek();
    throw SyntaxError({}, t.line, t.column, "unexpected " + describe(t) + " after expression");
  }
  return e;
}

}  // namespace poitest::syntax
