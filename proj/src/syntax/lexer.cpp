// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/syntax/lexer.hpp"

#include <array>
#include <cctype>

#include "poitest/errors.hpp"

namespace poitest::syntax {
namespace {

constexpr std::array<std::string_view, 22> kKeywords = {
    "after", "and",  "andalso", "band", "begin", "bnot", "bor", "bsl",  "bsr", "bxor", "case",
    "catch", "div",  "end",     "fun",  "if",    "not",  "of",  "or",   "orelse", "rem", "try"};

// Keep `when` and `xor` separate so the array above stays sorted for readability.
constexpr std::array<std::string_view, 2> kMoreKeywords = {"when", "xor"};

constexpr std::array<std::string_view, 14> kLongPunct = {"=:=", "=/=", "||", "->", "<-", "=>", "==",
                                                         "/=",  "=<",  ">=", "++", "--", "::", ":="};

constexpr std::string_view kShortPunct = "()[]{},;:|=<>+-*/!#";

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '@';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& path) : src_(src), path_(path) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token tok;
      tok.line = line_;
      tok.column = col_;
      if (at_end()) {
        tok.kind = TokenKind::End;
        out.push_back(std::move(tok));
        return out;
      }
      lex_one(tok);
      out.push_back(std::move(tok));
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(path_, line_, col_, msg); }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else {
        break;
      }
    }
  }

  std::uint32_t read_codepoint() {
    auto lead = static_cast<unsigned char>(advance());
    if (lead < 0x80) return lead;
    int extra = 0;
    std::uint32_t cp = 0;
    if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      fail("invalid UTF-8 byte");
    }
    for (int i = 0; i < extra; ++i) {
      if (at_end()) fail("truncated UTF-8 sequence");
      auto b = static_cast<unsigned char>(advance());
      if ((b & 0xC0) != 0x80) fail("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    return cp;
  }

  std::uint32_t read_escape() {
    if (at_end()) fail("unterminated escape sequence");
    char c = advance();
    switch (c) {
      case 'n': return '\n';
      case 't': return '\t';
      case 'r': return '\r';
      case 's': return ' ';
      case 'e': return 27;
      case '0': return 0;
      case '\\': return '\\';
      case '\'': return '\'';
      case '"': return '"';
      default: fail(std::string("unknown escape \\") + c);
    }
  }

  void lex_one(Token& tok) {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      lex_number(tok);
    } else if (c == '$') {
      advance();
      if (at_end()) fail("character literal at end of input");
      std::uint32_t cp = peek() == '\\' ? (advance(), read_escape()) : read_codepoint();
      tok.kind = TokenKind::Integer;
      tok.integer = cp;
      tok.text = "$";
    } else if (c == '"') {
      advance();
      tok.kind = TokenKind::String;
      while (true) {
        if (at_end()) fail("unterminated string literal");
        char d = peek();
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\\') {
          advance();
          append_utf8(tok.text, read_escape());
        } else {
          append_utf8(tok.text, read_codepoint());
        }
      }
    } else if (c == '\'') {
      advance();
      tok.kind = TokenKind::Atom;
      while (true) {
        if (at_end()) fail("unterminated quoted atom");
        char d = peek();
        if (d == '\'') {
          advance();
          break;
        }
        if (d == '\\') {
          advance();
          append_utf8(tok.text, read_escape());
        } else {
          append_utf8(tok.text, read_codepoint());
        }
      }
    } else if (std::islower(static_cast<unsigned char>(c)) != 0) {
      while (!at_end() && is_ident_char(peek())) tok.text.push_back(advance());
      tok.kind = is_keyword(tok.text) ? TokenKind::Keyword : TokenKind::Atom;
    } else if (std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_') {
      while (!at_end() && is_ident_char(peek())) tok.text.push_back(advance());
      tok.kind = TokenKind::Var;
    } else if (c == '.') {
      advance();
      tok.kind = TokenKind::Dot;
      tok.text = ".";
    } else {
      for (auto p : kLongPunct) {
        if (src_.substr(pos_, p.size()) == p) {
          for (std::size_t i = 0; i < p.size(); ++i) advance();
          tok.kind = TokenKind::Punct;
          tok.text = std::string(p);
          return;
        }
      }
      if (kShortPunct.find(c) != std::string_view::npos) {
        advance();
        tok.kind = TokenKind::Punct;
        tok.text = std::string(1, c);
        return;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  }

  void lex_number(Token& tok) {
    std::int64_t value = 0;
    auto accumulate = [&](int base, int digit) {
      if (__builtin_mul_overflow(value, base, &value) || __builtin_add_overflow(value, digit, &value))
        fail("integer literal out of range");
    };
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      tok.text.push_back(peek());
      accumulate(10, advance() - '0');
    }
    if (peek() == '#' && std::isalnum(static_cast<unsigned char>(peek(1))) != 0) {
      std::int64_t base = value;
      if (base < 2 || base > 36) fail("invalid integer base");
      advance();
      tok.text.push_back('#');
      value = 0;
      bool any = false;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek())) != 0) {
        char d = static_cast<char>(std::tolower(static_cast<unsigned char>(peek())));
        int digit = std::isdigit(static_cast<unsigned char>(d)) != 0 ? d - '0' : d - 'a' + 10;
        if (digit >= base) break;
        tok.text.push_back(advance());
        accumulate(static_cast<int>(base), digit);
        any = true;
      }
      if (!any) fail("missing digits after base prefix");
    }
    tok.kind = TokenKind::Integer;
    tok.integer = value;
  }

  std::string_view src_;
  const std::string& path_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  for (auto k : kMoreKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view source, const std::string& path) {
  return Lexer(source, path).run();
}

std::string describe(const Token& token) {
  switch (token.kind) {
    case TokenKind::Integer: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::Atom: return "atom '" + token.text + "'";
    case TokenKind::Var: return "variable " + token.text;
    case TokenKind::Keyword: return "'" + token.text + "'";
    case TokenKind::Punct: return "'" + token.text + "'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

}  // namespace poitest::syntax
