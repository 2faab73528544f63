// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/syntax/printer.hpp"

namespace poitest::syntax {
namespace {

constexpr int kPrimary = 8;
constexpr int kPrefix = 7;

int binop_level(const std::string& op) {
  if (op == "orelse") return 1;
  if (op == "andalso") return 2;
  if (op == "==" || op == "/=" || op == "=<" || op == "<" || op == ">=" || op == ">" || op == "=:=" ||
      op == "=/=")
    return 3;
  if (op == "++" || op == "--") return 4;
  if (op == "+" || op == "-" || op == "bor" || op == "bxor" || op == "bsl" || op == "bsr" || op == "or" ||
      op == "xor")
    return 5;
  return 6;
}

int level_of(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Match:
    case ExprKind::TraceEmit: return 0;
    case ExprKind::BinOp: return binop_level(e.text);
    case ExprKind::UnOp: return kPrefix;
    default: return kPrimary;
  }
}

std::string char_literal(std::int64_t c) {
  switch (c) {
    case '\n': return "$\\n";
    case '\t': return "$\\t";
    case '\r': return "$\\r";
    case ' ': return "$\\s";
    case '\\': return "$\\\\";
    case 27: return "$\\e";
    case 0: return "$\\0";
    default: break;
  }
  std::string out = "$";
  auto cp = static_cast<std::uint32_t>(c);
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
  return out;
}

class Printer {
 public:
  std::string expr(const Expr& e, int indent) {
    switch (e.kind) {
      case ExprKind::Integer:
        if (e.text == "$" && e.integer >= 0) return char_literal(e.integer);
        return std::to_string(e.integer);
      case ExprKind::String: return quote_string(e.text);
      case ExprKind::Atom: return quote_atom(e.text);
      case ExprKind::Var: return e.text;
      case ExprKind::List: {
        std::string out = "[" + seq(e.children, indent);
        if (e.tail) out += " | " + expr(*e.tail, indent);
        return out + "]";
      }
      case ExprKind::Tuple: return "{" + seq(e.children, indent) + "}";
      case ExprKind::BinOp: {
        int level = binop_level(e.text);
        bool right = level == 1 || level == 2 || level == 4;
        bool nonassoc = level == 3;
        const Expr& l = *e.children[0];
        const Expr& r = *e.children[1];
        bool paren_l = level_of(l) < level || (level_of(l) == level && (right || nonassoc));
        bool paren_r = level_of(r) < level || (level_of(r) == level && !right);
        return wrap(l, paren_l, indent) + " " + e.text + " " + wrap(r, paren_r, indent);
      }
      case ExprKind::UnOp: {
        const Expr& operand = *e.children[0];
        bool paren = level_of(operand) < kPrefix || operand.kind == ExprKind::Integer;
        std::string inner = wrap(operand, paren, indent);
        if (e.text == "not" || e.text == "bnot") return e.text + " " + inner;
        if (inner[0] == '-' || inner[0] == '+') return e.text + " " + inner;
        return e.text + inner;
      }
      case ExprKind::Call: {
        const Expr& callee = *e.children[0];
        bool bare = callee.kind == ExprKind::Atom || callee.kind == ExprKind::Var ||
                    callee.kind == ExprKind::Remote || callee.kind == ExprKind::Call;
        std::string out = wrap(callee, !bare, indent) + "(";
        for (std::size_t i = 1; i < e.children.size(); ++i)
          out += (i > 1 ? ", " : "") + expr(*e.children[i], indent);
        return out + ")";
      }
      case ExprKind::Remote: return expr(*e.children[0], indent) + ":" + expr(*e.children[1], indent);
      case ExprKind::FunRef:
        return "fun " + (e.module.empty() ? "" : quote_atom(e.module) + ":") + quote_atom(e.text) + "/" +
               std::to_string(e.integer);
      case ExprKind::Lambda: {
        std::string out = "fun";
        for (std::size_t i = 0; i < e.clauses.size(); ++i) {
          const Clause& c = e.clauses[i];
          out += (i ? ";\n" + pad(indent + 4) : std::string(" ")) + "(" + seq(c.patterns, indent) + ")" +
                 guard_and_body(c, indent + 4);
        }
        return out + "\n" + pad(indent) + "end";
      }
      case ExprKind::Case: {
        std::string out = "case " + expr(*e.children[0], indent) + " of";
        for (std::size_t i = 0; i < e.clauses.size(); ++i) {
          const Clause& c = e.clauses[i];
          out += std::string(i ? ";" : "") + "\n" + pad(indent + 4) + expr(*c.patterns[0], indent + 4) +
                 guard_and_body(c, indent + 4);
        }
        return out + "\n" + pad(indent) + "end";
      }
      case ExprKind::If: {
        std::string out = "if";
        for (std::size_t i = 0; i < e.clauses.size(); ++i) {
          const Clause& c = e.clauses[i];
          out += std::string(i ? ";" : "") + "\n" + pad(indent + 4) + guard(c.guards, indent + 4) + " ->" +
                 body(c.body, indent + 8);
        }
        return out + "\n" + pad(indent) + "end";
      }
      case ExprKind::Match:
        return wrap(*e.children[0], level_of(*e.children[0]) < 1, indent) + " = " +
               expr(*e.children[1], indent);
      case ExprKind::ListComp: {
        std::string out = "[" + expr(*e.children[0], indent) + " || ";
        for (std::size_t i = 0; i < e.qualifiers.size(); ++i) {
          const Qualifier& q = e.qualifiers[i];
          if (i) out += ", ";
          if (q.generator) out += expr(*q.pattern, indent) + " <- ";
          out += expr(*q.expr, indent);
        }
        return out + "]";
      }
      case ExprKind::Try: {
        std::string out = "try" + body(e.children, indent + 4) + "\n" + pad(indent) + "catch";
        for (std::size_t i = 0; i < e.clauses.size(); ++i) {
          const Clause& c = e.clauses[i];
          out += std::string(i ? ";" : "") + "\n" + pad(indent + 4) + expr(*c.patterns[0], indent + 4) + ":" +
                 expr(*c.patterns[1], indent + 4) + guard_and_body(c, indent + 4);
        }
        return out + "\n" + pad(indent) + "end";
      }
      case ExprKind::Block: return "begin" + body(e.children, indent + 4) + "\n" + pad(indent) + "end";
      case ExprKind::TraceEmit: return "tracer ! " + emit(e, indent);
    }
    return "?";
  }

  std::string guard(const std::vector<std::vector<ExprPtr>>& g, int indent) {
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "; " : "") + seq(g[i], indent);
    return out;
  }

  std::string body(const std::vector<ExprPtr>& b, int indent) {
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? ",\n" : "\n") + pad(indent) + expr(*b[i], indent);
    return out;
  }

  std::string guard_and_body(const Clause& c, int indent) {
    std::string out;
    if (!c.guards.empty()) out += " when " + guard(c.guards, indent);
    return out + " ->" + body(c.body, indent + 4);
  }

 private:
  static std::string pad(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

  std::string wrap(const Expr& e, bool paren, int indent) {
    return paren ? "(" + expr(e, indent) + ")" : expr(e, indent);
  }

  std::string seq(const std::vector<ExprPtr>& xs, int indent) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + expr(*xs[i], indent);
    return out;
  }

  std::string emit(const Expr& e, int indent) {
    const EmitInfo& info = *e.emit;
    auto arg = [&](std::size_t i) { return expr(*e.children[i], indent); };
    switch (info.tag) {
      case TraceTag::AddI: return "{add_i, " + to_string(info.poi) + ", " + arg(0) + ", " + arg(1) + "}";
      case TraceTag::Add: return "{add, " + to_string(info.poi) + ", " + arg(0) + "}";
      case TraceTag::AddRef: return "{add, " + to_string(info.poi) + ", " + arg(0) + ", " + arg(1) + "}";
      case TraceTag::Begin: {
        std::string out = "{'begin', " + arg(0) + ", " + to_string(info.frame) + ", " +
                          (info.origin == FrameOrigin::CallSite ? "call_site" : "definition");
        if (info.callee)
          out += ", {callee, " + quote_atom(info.callee->name) + ", " + std::to_string(info.callee->arity) + "}";
        return out + "}";
      }
      case TraceTag::End: return "{'end', " + arg(0) + "}";
    }
    return "{}";
  }
};

}  // namespace

std::string quote_string(const std::string& bytes) {
  std::string out = "\"";
  for (char c : bytes) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case 27: out += "\\e"; break;
      case '\0': out += "\\0"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

std::string print_expr(const Expr& e) { return Printer().expr(e, 0); }

std::string pretty_print(const SourceModule& m) {
  Printer p;
  std::string out = "-module(" + quote_atom(m.name) + ").\n-export([";
  for (std::size_t i = 0; i < m.exports.size(); ++i)
    out += (i ? ", " : "") + quote_atom(m.exports[i].name) + "/" + std::to_string(m.exports[i].arity);
  out += "]).\n";
  for (const FunDef& f : m.functions) {
    out += "\n";
    if (f.spec) {
      out += "-spec " + quote_atom(f.name) + "(";
      for (std::size_t i = 0; i < f.spec->params.size(); ++i)
        out += (i ? ", " : "") + to_string(f.spec->params[i]);
      out += ") -> " + to_string(f.spec->result) + ".\n";
    }
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
      const Clause& c = f.clauses[i];
      out += quote_atom(f.name) + "(";
      for (std::size_t k = 0; k < c.patterns.size(); ++k) out += (k ? ", " : "") + print_expr(*c.patterns[k]);
      out += ")" + p.guard_and_body(c, 0) + (i + 1 < f.clauses.size() ? ";\n" : ".\n");
    }
  }
  return out;
}

}  // namespace poitest::syntax
