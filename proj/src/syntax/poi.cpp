// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/syntax/poi.hpp"

#include <cctype>

#include "poitest/syntax/lexer.hpp"

namespace poitest {

std::string quote_atom(const std::string& name) {
  bool plain = !name.empty() && std::islower(static_cast<unsigned char>(name[0])) != 0 &&
               !syntax::is_keyword(name);
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '@')) plain = false;
  if (plain) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "'";
}

std::string to_string(const PoiKind& kind) {
  if (kind.tag == "var") return "{var," + quote_atom(kind.var_name) + "}";
  return quote_atom(kind.tag);
}

std::string to_string(const Poi& poi) {
  return "{" + quote_atom(poi.module) + "," + std::to_string(poi.line) + "," + to_string(poi.kind) + "," +
         std::to_string(poi.occurrence) + "}";
}

std::string to_string(const Frame& frame) {
  return "{" + quote_atom(frame.module) + "," + quote_atom(frame.function) + "," + std::to_string(frame.arity) +
         ",{line," + std::to_string(frame.line) + "}}";
}

std::string to_string(const FunctionId& id) { return id.name + "/" + std::to_string(id.arity); }

}  // namespace poitest
