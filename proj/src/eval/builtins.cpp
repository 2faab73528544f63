// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/eval/builtins.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "poitest/eval/runtime_error.hpp"

namespace poitest::eval {
namespace {

using Args = std::vector<Value>;

std::int64_t int_arg(const Value& v) {
  if (!v.is_int()) badarg();
  return v.as_int();
}

std::vector<Value> list_arg(const Value& v) {
  if (!v.is_list() || !v.is_proper_list()) badarg();
  return v.to_vector();
}

std::int64_t width_arg(const Value& v) {
  std::int64_t n = int_arg(v);
  if (n < 0) badarg();
  return n;
}

Value pad_left(const Value& s, const Value& n, const Value& c) {
  auto chars = list_arg(s);
  auto width = static_cast<std::size_t>(width_arg(n));
  if (chars.size() >= width) return Value::list(std::vector<Value>(chars.begin(), chars.begin() + width));
  chars.resize(width, c);
  return Value::list(chars);
}

Value pad_right(const Value& s, const Value& n, const Value& c) {
  auto chars = list_arg(s);
  auto width = static_cast<std::size_t>(width_arg(n));
  if (chars.size() >= width) return Value::list(std::vector<Value>(chars.end() - width, chars.end()));
  std::vector<Value> out(width - chars.size(), c);
  out.insert(out.end(), chars.begin(), chars.end());
  return Value::list(out);
}

Value pad_centre(const Value& s, const Value& n, const Value& c) {
  auto chars = list_arg(s);
  auto width = static_cast<std::size_t>(width_arg(n));
  if (chars.size() > width) {
    std::size_t start = (chars.size() - width) / 2;
    return Value::list(std::vector<Value>(chars.begin() + start, chars.begin() + start + width));
  }
  std::size_t pad = width - chars.size();
  std::size_t right = pad / 2;
  std::vector<Value> out(pad - right, c);
  out.insert(out.end(), chars.begin(), chars.end());
  out.insert(out.end(), right, c);
  return Value::list(out);
}

Value tokens(const Value& s, const Value& seps) {
  auto chars = list_arg(s);
  auto sep = list_arg(seps);
  std::vector<Value> fields;
  std::vector<Value> cur;
  for (const Value& c : chars) {
    if (std::find(sep.begin(), sep.end(), c) != sep.end()) {
      if (!cur.empty()) fields.push_back(Value::list(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) fields.push_back(Value::list(cur));
  return Value::list(fields);
}

Value add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) raise_error(Value::atom("badarith"));
  return Value::integer(r);
}

Value bool_of(bool b) { return Value::boolean(b); }

const std::map<std::string, BuiltinFn>& registry() {
  static const std::map<std::string, BuiltinFn> table = {
      // erlang
      {"erlang:length/1", [](Args& a, BuiltinContext&) {
         return Value::integer(static_cast<std::int64_t>(list_arg(a[0]).size()));
       }},
      {"erlang:hd/1", [](Args& a, BuiltinContext&) {
         if (!a[0].is_cons()) badarg();
         return a[0].head();
       }},
      {"erlang:tl/1", [](Args& a, BuiltinContext&) {
         if (!a[0].is_cons()) badarg();
         return a[0].tail();
       }},
      {"erlang:element/2", [](Args& a, BuiltinContext&) {
         std::int64_t i = int_arg(a[0]);
         if (!a[1].is_tuple() || i < 1 || i > static_cast<std::int64_t>(a[1].elements().size())) badarg();
         return a[1].elements()[static_cast<std::size_t>(i - 1)];
       }},
      {"erlang:setelement/3", [](Args& a, BuiltinContext&) {
         std::int64_t i = int_arg(a[0]);
         if (!a[1].is_tuple() || i < 1 || i > static_cast<std::int64_t>(a[1].elements().size())) badarg();
         auto es = a[1].elements();
         es[static_cast<std::size_t>(i - 1)] = a[2];
         return Value::tuple(std::move(es));
       }},
      {"erlang:tuple_size/1", [](Args& a, BuiltinContext&) {
         if (!a[0].is_tuple()) badarg();
         return Value::integer(static_cast<std::int64_t>(a[0].elements().size()));
       }},
      {"erlang:abs/1", [](Args& a, BuiltinContext&) {
         std::int64_t v = int_arg(a[0]);
         if (v == INT64_MIN) raise_error(Value::atom("badarith"));
         return Value::integer(v < 0 ? -v : v);
       }},
      {"erlang:max/2", [](Args& a, BuiltinContext&) { return a[0] < a[1] ? a[1] : a[0]; }},
      {"erlang:min/2", [](Args& a, BuiltinContext&) { return a[1] < a[0] ? a[1] : a[0]; }},
      {"erlang:is_integer/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_int()); }},
      {"erlang:is_atom/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_atom()); }},
      {"erlang:is_list/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_list()); }},
      {"erlang:is_tuple/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_tuple()); }},
      {"erlang:is_boolean/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_boolean()); }},
      {"erlang:is_function/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_fun()); }},
      {"erlang:is_function/2", [](Args& a, BuiltinContext&) {
         return bool_of(a[0].is_fun() && a[0].closure().arity == int_arg(a[1]));
       }},
      {"erlang:is_reference/1", [](Args& a, BuiltinContext&) { return bool_of(a[0].is_ref()); }},
      {"erlang:make_ref/0", [](Args&, BuiltinContext& ctx) { return ctx.make_ref(); }},
      {"erlang:throw/1", [](Args& a, BuiltinContext&) -> Value {
         throw Raised(RuntimeError{Value::atom("throw"), a[0], std::nullopt});
       }},
      {"erlang:error/1", [](Args& a, BuiltinContext&) -> Value { raise_error(a[0]); }},
      {"erlang:raise/2", [](Args& a, BuiltinContext&) -> Value {
         if (!a[0].is_atom("error") && !a[0].is_atom("throw")) badarg();
         throw Raised(RuntimeError{a[0], a[1], std::nullopt});
       }},
      {"erlang:apply/2", [](Args& a, BuiltinContext& ctx) { return ctx.apply(a[0], list_arg(a[1])); }},
      {"erlang:apply/3", [](Args& a, BuiltinContext& ctx) {
         if (!a[0].is_atom() || !a[1].is_atom()) badarg();
         return ctx.apply(Value::tuple({a[0], a[1]}), list_arg(a[2]));
       }},
      {"erlang:integer_to_list/1", [](Args& a, BuiltinContext&) {
         return Value::string(std::to_string(int_arg(a[0])));
       }},
      {"erlang:list_to_integer/1", [](Args& a, BuiltinContext&) {
         std::string s;
         if (!list_to_utf8(a[0], s) || s.empty()) badarg();
         std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
         if (i == s.size()) badarg();
         for (std::size_t k = i; k < s.size(); ++k)
           if (s[k] < '0' || s[k] > '9') badarg();
         try {
           return Value::integer(std::stoll(s));
         } catch (const std::exception&) {
           badarg();
         }
       }},
      {"erlang:atom_to_list/1", [](Args& a, BuiltinContext&) {
         if (!a[0].is_atom()) badarg();
         return Value::string(a[0].atom_name());
       }},
      {"erlang:list_to_atom/1", [](Args& a, BuiltinContext&) {
         std::string s;
         if (!list_to_utf8(a[0], s)) badarg();
         return Value::atom(s);
       }},
      {"erlang:tuple_to_list/1", [](Args& a, BuiltinContext&) {
         if (!a[0].is_tuple()) badarg();
         return Value::list(a[0].elements());
       }},
      {"erlang:list_to_tuple/1", [](Args& a, BuiltinContext&) { return Value::tuple(list_arg(a[0])); }},
      {"erlang:pad_left/3", [](Args& a, BuiltinContext&) { return pad_left(a[0], a[1], a[2]); }},
      {"erlang:pad_right/3", [](Args& a, BuiltinContext&) { return pad_right(a[0], a[1], a[2]); }},
      {"erlang:pad_centre/3", [](Args& a, BuiltinContext&) { return pad_centre(a[0], a[1], a[2]); }},
      {"erlang:tokens/2", [](Args& a, BuiltinContext&) { return tokens(a[0], a[1]); }},
      // lists
      {"lists:max/1", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         if (xs.empty()) raise_error(Value::atom("function_clause"));
         return *std::max_element(xs.begin(), xs.end());
       }},
      {"lists:min/1", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         if (xs.empty()) raise_error(Value::atom("function_clause"));
         return *std::min_element(xs.begin(), xs.end());
       }},
      {"lists:reverse/1", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         std::reverse(xs.begin(), xs.end());
         return Value::list(xs);
       }},
      {"lists:reverse/2", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         std::reverse(xs.begin(), xs.end());
         return Value::list(xs, a[1]);
       }},
      {"lists:zip/2", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         auto ys = list_arg(a[1]);
         if (xs.size() != ys.size()) raise_error(Value::atom("function_clause"));
         std::vector<Value> out;
         for (std::size_t i = 0; i < xs.size(); ++i) out.push_back(Value::tuple({xs[i], ys[i]}));
         return Value::list(out);
       }},
      {"lists:duplicate/2", [](Args& a, BuiltinContext&) {
         std::int64_t n = int_arg(a[0]);
         if (n < 0) raise_error(Value::atom("function_clause"));
         if (n > 10'000'000) raise_error(Value::atom("system_limit"));
         return Value::list(std::vector<Value>(static_cast<std::size_t>(n), a[1]));
       }},
      {"lists:seq/2", [](Args& a, BuiltinContext&) {
         std::int64_t from = int_arg(a[0]);
         std::int64_t to = int_arg(a[1]);
         if (to < from - 1) raise_error(Value::atom("function_clause"));
         if (to - from > 10'000'000) raise_error(Value::atom("system_limit"));
         std::vector<Value> out;
         for (std::int64_t i = from; i <= to; ++i) out.push_back(Value::integer(i));
         return Value::list(out);
       }},
      {"lists:nth/2", [](Args& a, BuiltinContext&) {
         std::int64_t n = int_arg(a[0]);
         auto xs = list_arg(a[1]);
         if (n < 1 || n > static_cast<std::int64_t>(xs.size())) raise_error(Value::atom("function_clause"));
         return xs[static_cast<std::size_t>(n - 1)];
       }},
      {"lists:last/1", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         if (xs.empty()) raise_error(Value::atom("function_clause"));
         return xs.back();
       }},
      {"lists:sum/1", [](Args& a, BuiltinContext&) {
         Value acc = Value::integer(0);
         for (const Value& x : list_arg(a[0])) {
           if (!x.is_int()) raise_error(Value::atom("badarith"));
           acc = add_checked(acc.as_int(), x.as_int());
         }
         return acc;
       }},
      {"lists:append/2", [](Args& a, BuiltinContext&) { return Value::list(list_arg(a[0]), a[1]); }},
      {"lists:member/2", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[1]);
         return bool_of(std::find(xs.begin(), xs.end(), a[0]) != xs.end());
       }},
      {"lists:sort/1", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         std::stable_sort(xs.begin(), xs.end());
         return Value::list(xs);
       }},
      {"lists:sublist/2", [](Args& a, BuiltinContext&) {
         auto xs = list_arg(a[0]);
         std::int64_t n = int_arg(a[1]);
         if (n < 0) raise_error(Value::atom("function_clause"));
         if (static_cast<std::size_t>(n) < xs.size()) xs.resize(static_cast<std::size_t>(n));
         return Value::list(xs);
       }},
      {"lists:foldl/3", [](Args& a, BuiltinContext& ctx) {
         Value acc = a[1];
         for (const Value& x : list_arg(a[2])) acc = ctx.apply(a[0], {x, acc});
         return acc;
       }},
      {"lists:foldr/3", [](Args& a, BuiltinContext& ctx) {
         Value acc = a[1];
         auto xs = list_arg(a[2]);
         for (auto it = xs.rbegin(); it != xs.rend(); ++it) acc = ctx.apply(a[0], {*it, acc});
         return acc;
       }},
      {"lists:map/2", [](Args& a, BuiltinContext& ctx) {
         std::vector<Value> out;
         for (const Value& x : list_arg(a[1])) out.push_back(ctx.apply(a[0], {x}));
         return Value::list(out);
       }},
      {"lists:filter/2", [](Args& a, BuiltinContext& ctx) {
         std::vector<Value> out;
         for (const Value& x : list_arg(a[1])) {
           Value keep = ctx.apply(a[0], {x});
           if (!keep.is_boolean()) badarg();
           if (keep.is_atom("true")) out.push_back(x);
         }
         return Value::list(out);
       }},
      {"lists:any/2", [](Args& a, BuiltinContext& ctx) {
         for (const Value& x : list_arg(a[1]))
           if (ctx.apply(a[0], {x}).is_atom("true")) return Value::boolean(true);
         return Value::boolean(false);
       }},
      {"lists:all/2", [](Args& a, BuiltinContext& ctx) {
         for (const Value& x : list_arg(a[1]))
           if (!ctx.apply(a[0], {x}).is_atom("true")) return Value::boolean(false);
         return Value::boolean(true);
       }},
      // string
      {"string:tokens/2", [](Args& a, BuiltinContext&) { return tokens(a[0], a[1]); }},
      {"string:left/2", [](Args& a, BuiltinContext&) { return pad_left(a[0], a[1], Value::integer(' ')); }},
      {"string:left/3", [](Args& a, BuiltinContext&) { return pad_left(a[0], a[1], a[2]); }},
      {"string:right/2", [](Args& a, BuiltinContext&) { return pad_right(a[0], a[1], Value::integer(' ')); }},
      {"string:right/3", [](Args& a, BuiltinContext&) { return pad_right(a[0], a[1], a[2]); }},
      {"string:centre/2", [](Args& a, BuiltinContext&) { return pad_centre(a[0], a[1], Value::integer(' ')); }},
      {"string:centre/3", [](Args& a, BuiltinContext&) { return pad_centre(a[0], a[1], a[2]); }},
      {"string:len/1", [](Args& a, BuiltinContext&) {
         return Value::integer(static_cast<std::int64_t>(list_arg(a[0]).size()));
       }},
      {"string:concat/2", [](Args& a, BuiltinContext&) { return Value::list(list_arg(a[0]), a[1]); }},
      {"string:copies/2", [](Args& a, BuiltinContext&) {
         auto s = list_arg(a[0]);
         std::int64_t n = int_arg(a[1]);
         if (n < 0) badarg();
         std::vector<Value> out;
         for (std::int64_t i = 0; i < n; ++i) out.insert(out.end(), s.begin(), s.end());
         return Value::list(out);
       }},
      {"string:join/2", [](Args& a, BuiltinContext&) {
         auto parts = list_arg(a[0]);
         auto sep = list_arg(a[1]);
         std::vector<Value> out;
         for (std::size_t i = 0; i < parts.size(); ++i) {
           if (i) out.insert(out.end(), sep.begin(), sep.end());
           auto p = list_arg(parts[i]);
           out.insert(out.end(), p.begin(), p.end());
         }
         return Value::list(out);
       }},
  };
  return table;
}

}  // namespace

BuiltinFn find_builtin(std::string_view module, std::string_view name, int arity) {
  std::string key = std::string(module.empty() ? "erlang" : module) + ":" + std::string(name) + "/" +
                    std::to_string(arity);
  const auto& table = registry();
  auto it = table.find(key);
  return it == table.end() ? nullptr : it->second;
}

Value builtin_apply(std::string_view name, std::vector<Value> args) {
  std::string_view module;
  std::string_view fun = name;
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    module = name.substr(0, colon);
    fun = name.substr(colon + 1);
  }
  BuiltinFn fn = find_builtin(module, fun, static_cast<int>(args.size()));
  if (!fn) raise_error("undef", Value::atom(std::string(name)));
  std::uint64_t next_ref = 0;
  BuiltinContext ctx;
  ctx.apply = [](const Value&, std::vector<Value>) -> Value { badarg(); };
  ctx.make_ref = [&] { return Value::ref(++next_ref); };
  return fn(args, ctx);
}

}  // namespace poitest::eval
