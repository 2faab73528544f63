// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace poitest::syntax {

enum class TokenKind {
  Integer,  // also character literals such as $a
  String,
  Atom,
  Var,
  Keyword,
  Punct,
  Dot,  // form terminator
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // atom/var name, keyword, punctuation, decoded string bytes
  std::int64_t integer = 0;
  int line = 1;
  int column = 1;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

/// Splits MiniFun source into tokens. `%` starts a comment running to the end
/// of the line. Throws SyntaxError on malformed input.
std::vector<Token> tokenize(std::string_view source, const std::string& path = {});

bool is_keyword(std::string_view word);

/// Human-readable token description for diagnostics.
std::string describe(const Token& token);

}  // namespace poitest::syntax
