// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/eval/value.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace poitest::eval {
namespace {

const std::string* intern(std::string_view name) {
  static std::mutex mu;
  static std::unordered_set<std::string> table;
  std::lock_guard<std::mutex> lock(mu);
  return &*table.emplace(name).first;
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

int cmp_int(std::int64_t a, std::int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

bool visible_env_entry(const std::pair<std::string, Value>& b) {
  return b.first.rfind(syntax::kReservedVarPrefix, 0) != 0;
}

int compare_env(const Env& a, const Env& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (;;) {
    while (ia != a.end() && !visible_env_entry(*ia)) ++ia;
    while (ib != b.end() && !visible_env_entry(*ib)) ++ib;
    if (ia == a.end() || ib == b.end()) return (ia == a.end() ? 0 : 1) - (ib == b.end() ? 0 : 1);
    if (int c = ia->first.compare(ib->first); c != 0) return c < 0 ? -1 : 1;
    if (int c = compare(ia->second, ib->second); c != 0) return c;
    ++ia;
    ++ib;
  }
}

int compare_closure(const Closure& a, const Closure& b) {
  if (a.kind != b.kind) return a.kind == Closure::Kind::Lambda ? -1 : 1;
  if (int c = a.module.compare(b.module); c != 0) return c < 0 ? -1 : 1;
  if (int c = cmp_int(a.arity, b.arity); c != 0) return c;
  if (a.kind == Closure::Kind::FunRef) {
    int c = a.name.compare(b.name);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (int c = cmp_int(a.lambda->pos.node_id, b.lambda->pos.node_id); c != 0) return c;
  return compare_env(a.env, b.env);
}

}  // namespace

Value Value::atom(std::string_view name) { return Value(Rep(Atom{intern(name)})); }

Value Value::cons(Value head, Value tail) {
  auto c = std::make_shared<Cons>();
  c->head = std::move(head);
  c->tail = std::move(tail);
  return Value(Rep(ListPtr(std::move(c))));
}

Value Value::list(const std::vector<Value>& elems, Value tail) {
  Value out = std::move(tail);
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) out = cons(*it, std::move(out));
  return out;
}

Value Value::string(std::string_view s) {
  std::vector<Value> codes;
  for (std::size_t i = 0; i < s.size();) {
    auto lead = static_cast<unsigned char>(s[i]);
    std::uint32_t cp = lead;
    int extra = 0;
    if (lead >= 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else if (lead >= 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if (lead >= 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    }
    ++i;
    for (int k = 0; k < extra && i < s.size(); ++k, ++i) cp = (cp << 6) | (static_cast<unsigned char>(s[i]) & 0x3F);
    codes.push_back(integer(cp));
  }
  return list(codes);
}

Value Value::tuple(std::vector<Value> elems) {
  return Value(Rep(std::make_shared<const std::vector<Value>>(std::move(elems))));
}

const Value& Value::head() const { return std::get<ListPtr>(rep_)->head; }
const Value& Value::tail() const { return std::get<ListPtr>(rep_)->tail; }

bool Value::is_proper_list() const {
  const Value* v = this;
  while (v->is_cons()) v = &v->tail();
  return v->is_nil();
}

std::vector<Value> Value::to_vector() const {
  std::vector<Value> out;
  const Value* v = this;
  while (v->is_cons()) {
    out.push_back(v->head());
    v = &v->tail();
  }
  if (!v->is_nil()) throw std::invalid_argument("improper list");
  return out;
}

std::size_t Value::length() const {
  std::size_t n = 0;
  for (const Value* v = this; v->is_cons(); v = &v->tail()) ++n;
  return n;
}

Cons::~Cons() {
  // Unlink uniquely owned tails one by one so long lists do not recurse.
  if (!std::holds_alternative<ListPtr>(tail.rep_)) return;
  ListPtr next = std::move(std::get<ListPtr>(tail.rep_));
  while (next && next.use_count() == 1) {
    auto& cell = const_cast<Cons&>(*next);
    ListPtr after;
    if (std::holds_alternative<ListPtr>(cell.tail.rep_)) after = std::move(std::get<ListPtr>(cell.tail.rep_));
    next = std::move(after);
  }
}

int compare(const Value& a, const Value& b) {
  const Value* x = &a;
  const Value* y = &b;
  for (;;) {
    if (x->rep_.index() != y->rep_.index()) return x->rep_.index() < y->rep_.index() ? -1 : 1;
    switch (x->rep_.index()) {
      case 0: return cmp_int(x->as_int(), y->as_int());
      case 1: {
        if (std::get<Atom>(x->rep_).name == std::get<Atom>(y->rep_).name) return 0;
        int c = x->atom_name().compare(y->atom_name());
        return c < 0 ? -1 : 1;
      }
      case 2: {
        Ref r = x->as_ref();
        Ref s = y->as_ref();
        if (r.synthetic != s.synthetic) return r.synthetic ? 1 : -1;
        return cmp_int(static_cast<std::int64_t>(r.id), static_cast<std::int64_t>(s.id));
      }
      case 3: {
        const auto& f = std::get<FunPtr>(x->rep_);
        const auto& g = std::get<FunPtr>(y->rep_);
        return f == g ? 0 : compare_closure(*f, *g);
      }
      case 4: {
        const auto& t = x->elements();
        const auto& u = y->elements();
        if (&t == &u) return 0;
        if (t.size() != u.size()) return t.size() < u.size() ? -1 : 1;
        for (std::size_t i = 0; i < t.size(); ++i)
          if (int c = compare(t[i], u[i]); c != 0) return c;
        return 0;
      }
      default: {
        const auto& l = std::get<ListPtr>(x->rep_);
        const auto& m = std::get<ListPtr>(y->rep_);
        if (l == m) return 0;
        if (!l) return -1;
        if (!m) return 1;
        if (int c = compare(l->head, m->head); c != 0) return c;
        x = &l->tail;
        y = &m->tail;
      }
    }
  }
}

bool is_printable_string(const Value& v) {
  if (!v.is_cons()) return false;
  const Value* p = &v;
  for (; p->is_cons(); p = &p->tail()) {
    const Value& h = p->head();
    if (!h.is_int() || h.as_int() < 32 || h.as_int() > 126) return false;
  }
  return p->is_nil();
}

bool list_to_utf8(const Value& v, std::string& out) {
  out.clear();
  const Value* p = &v;
  for (; p->is_cons(); p = &p->tail()) {
    const Value& h = p->head();
    if (!h.is_int() || h.as_int() < 0 || h.as_int() > 0x10FFFF) return false;
    append_utf8(out, static_cast<std::uint32_t>(h.as_int()));
  }
  return p->is_nil();
}

namespace {

void render(const Value& v, std::string& out) {
  if (v.is_int()) {
    out += std::to_string(v.as_int());
  } else if (v.is_atom()) {
    out += quote_atom(v.atom_name());
  } else if (v.is_ref()) {
    Ref r = v.as_ref();
    out += r.synthetic ? "#Ref<0." + std::to_string(r.id) + ">" : "#Ref<" + std::to_string(r.id) + ">";
  } else if (v.is_fun()) {
    out += "#fun";
  } else if (v.is_tuple()) {
    out.push_back('{');
    const auto& es = v.elements();
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (i) out.push_back(',');
      render(es[i], out);
    }
    out.push_back('}');
  } else if (is_printable_string(v)) {
    out.push_back('"');
    for (const Value* p = &v; p->is_cons(); p = &p->tail()) {
      char c = static_cast<char>(p->head().as_int());
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out.push_back('"');
  } else {
    out.push_back('[');
    const Value* p = &v;
    bool first = true;
    for (; p->is_cons(); p = &p->tail()) {
      if (!first) out.push_back(',');
      first = false;
      render(p->head(), out);
    }
    if (!p->is_nil()) {
      out.push_back('|');
      render(*p, out);
    }
    out.push_back(']');
  }
}

}  // namespace

std::string to_string(const Value& v) {
  std::string out;
  render(v, out);
  return out;
}

std::size_t hash_value(const Value& v) {
  std::size_t h = v.rep_.index() * 0x9E3779B97F4A7C15ull;
  auto mix = [&](std::size_t x) { h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2); };
  switch (v.rep_.index()) {
    case 0: mix(std::hash<std::int64_t>()(v.as_int())); break;
    case 1: mix(std::hash<std::string>()(v.atom_name())); break;
    case 2: mix(v.as_ref().id); break;
    case 3: break;
    case 4:
      for (const auto& e : v.elements()) mix(hash_value(e));
      break;
    default:
      for (const Value* p = &v; p->is_cons(); p = &p->tail()) mix(hash_value(p->head()));
  }
  return h;
}

}  // namespace poitest::eval
