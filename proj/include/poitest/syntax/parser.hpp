// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "poitest/syntax/ast.hpp"
#include "poitest/syntax/lexer.hpp"

namespace poitest::syntax {

struct ParseOptions {
  /// Accept `__poi_` variables and `tracer ! {...}` emits, as printed for
  /// instrumented modules.
  bool allow_instrumentation = false;
};

/// Parses a whole `.mf` module. The module name comes from `-module(...)` or,
/// failing that, from the file stem of `path`.
SourceModule parse_module(std::string_view source, const std::string& path,
                          const ParseOptions& options = {});

/// Parses a single expression (no trailing dot required). Node ids start at 0.
ExprPtr parse_expression(std::string_view source, const ParseOptions& options = {});

/// Recursive-descent parser over a token vector. Exposed so the config loader
/// can reuse the expression grammar for its `name = term.` forms.
class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string path, ParseOptions options);

  SourceModule module();
  ExprPtr expression();

  bool at_end() const;
  bool at_dot() const;
  void expect_dot();
  const Token& peek() const { return tokens_[pos_]; }

 private:
  const Token& next();
  bool accept_punct(std::string_view p);
  bool accept_keyword(std::string_view k);
  void expect_punct(std::string_view p);
  void expect_keyword(std::string_view k);
  [[noreturn]] void fail_expected(const std::string& expected) const;

  SourcePos pos_of(const Token& t);

  void attribute(SourceModule& m);
  void function(SourceModule& m);
  TypeExpr type_expr();

  std::vector<ExprPtr> exprs();
  ExprPtr expr();
  ExprPtr binary(int level);
  ExprPtr prefix();
  ExprPtr postfix();
  ExprPtr primary();
  ExprPtr list_or_comprehension(const Token& open);
  ExprPtr fun_expr(const Token& fun_tok);
  ExprPtr case_expr(const Token& case_tok);
  ExprPtr if_expr(const Token& if_tok);
  ExprPtr try_expr(const Token& try_tok);
  ExprPtr emit_expr(const Token& at, const ExprPtr& message);
  std::vector<std::vector<ExprPtr>> guard();
  Clause clause_body(Clause c);
  std::vector<ExprPtr> call_args();

  std::vector<Token> tokens_;
  std::string path_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::vector<std::pair<FunctionId, FunSpec>> pending_specs_;
};

}  // namespace poitest::syntax
