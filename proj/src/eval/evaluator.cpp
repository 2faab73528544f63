// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/eval/evaluator.hpp"

#include <pthread.h>

#include <cstdlib>
#include <exception>
#include <string>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "poitest/eval/builtins.hpp"

namespace poitest::eval {

using syntax::Clause;
using syntax::Expr;
using syntax::ExprKind;
using syntax::FunDef;
using syntax::SourceModule;

std::int64_t default_step_budget() {
  if (const char* s = std::getenv("POITEST_STEP_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return kDefaultStepBudget;
}

struct Program::Data {
  std::vector<SourceModule> modules;
  std::unordered_map<std::string, std::size_t> by_name;
  std::vector<std::unordered_map<std::string, const FunDef*>> functions;
};

namespace {
std::string fun_key(std::string_view name, int arity) { return std::string(name) + "/" + std::to_string(arity); }
}  // namespace

Program::Program(std::vector<SourceModule> modules) {
  auto d = std::make_shared<Data>();
  d->modules = std::move(modules);
  d->functions.resize(d->modules.size());
  for (std::size_t i = 0; i < d->modules.size(); ++i) {
    d->by_name.emplace(d->modules[i].name, i);
    for (const FunDef& f : d->modules[i].functions) d->functions[i].emplace(fun_key(f.name, f.arity), &f);
  }
  data_ = std::move(d);
}

const std::vector<SourceModule>& Program::modules() const {
  static const std::vector<SourceModule> none;
  return data_ ? data_->modules : none;
}

const SourceModule* Program::find_module(std::string_view name) const {
  if (!data_) return nullptr;
  auto it = data_->by_name.find(std::string(name));
  return it == data_->by_name.end() ? nullptr : &data_->modules[it->second];
}

const FunDef* Program::find_function(std::string_view module, std::string_view name, int arity) const {
  if (!data_) return nullptr;
  auto it = data_->by_name.find(std::string(module));
  if (it == data_->by_name.end()) return nullptr;
  const auto& fns = data_->functions[it->second];
  auto f = fns.find(fun_key(name, arity));
  return f == fns.end() ? nullptr : f->second;
}

namespace {

constexpr std::size_t kStackBytes = std::size_t{1} << 30;
constexpr std::size_t kStackReserve = std::size_t{64} << 20;

Value atom(const char* name) { return Value::atom(name); }

[[noreturn]] void badarith() { raise_error(atom("badarith")); }

class Evaluator {
 public:
  Evaluator(const Program& program, const Budget& budget, std::vector<TraceEvent>& events)
      : program_(program), budget_(budget), events_(events) {
    char here;
    stack_base_ = &here;
    ctx_.apply = [this](const Value& f, std::vector<Value> args) { return apply(f, std::move(args), nullptr); };
    ctx_.make_ref = [this] { return refs_.next(); };
  }

  std::int64_t steps() const { return steps_; }

  Value call_entry(const FunctionId& fn, std::vector<Value> args) {
    const SourceModule& m = program_.main();
    const FunDef* f = program_.find_function(m.name, fn.name, fn.arity);
    if (!f) undef(m.name, fn.name, fn.arity);
    return call_function(m, *f, args);
  }

 private:
  // --- bookkeeping -------------------------------------------------------

  void tick(const Expr* at) {
    if (++steps_ > budget_.max_steps) abort_with("timeout", at);
    if ((steps_ & 0xFFF) == 0) {
      if (budget_.deadline && std::chrono::steady_clock::now() >= *budget_.deadline) abort_with("timeout", at);
      char here;
      if (static_cast<std::size_t>(stack_base_ - &here) > kStackBytes - kStackReserve)
        abort_with("system_limit", at);
    }
  }

  void check_depth(const Expr* at) {
    char here;
    if (static_cast<std::size_t>(stack_base_ - &here) > kStackBytes - kStackReserve) abort_with("system_limit", at);
  }

  [[noreturn]] void abort_with(const char* reason, const Expr* at) {
    RuntimeError e{atom("error"), atom(reason), std::nullopt};
    if (at) e.pos = at->pos;
    throw Aborted(std::move(e));
  }

  [[noreturn]] static void undef(const std::string& m, const std::string& f, std::size_t arity) {
    raise_error("undef", Value::tuple({Value::atom(m), Value::atom(f), Value::integer(static_cast<std::int64_t>(arity))}));
  }

  static const Value* lookup(const Env& env, const std::string& name, std::size_t from = 0) {
    for (std::size_t i = env.size(); i > from; --i)
      if (env[i - 1].first == name) return &env[i - 1].second;
    return nullptr;
  }

  // --- calls -------------------------------------------------------------

  Value call_function(const SourceModule& m, const FunDef& f, std::vector<Value>& args) {
    check_depth(nullptr);
    for (const Clause& c : f.clauses) {
      Env env;
      if (match_all(c.patterns, args, env, 0, m) && guard_ok(c.guards, env, m)) return body(c.body, env, m);
    }
    raise_error("function_clause",
                Value::tuple({Value::atom(m.name), Value::atom(f.name), Value::list(args)}));
  }

  Value call_lambda(const Closure& fn, std::vector<Value>& args) {
    check_depth(nullptr);
    const SourceModule* m = program_.find_module(fn.module);
    if (!m) undef(fn.module, "fun", args.size());
    Env env = fn.env;
    std::size_t base = env.size();
    for (const Clause& c : fn.lambda->clauses) {
      env.resize(base);
      if (match_all(c.patterns, args, env, base, *m) && guard_ok(c.guards, env, *m)) return body(c.body, env, *m);
    }
    raise_error("function_clause", Value::tuple({Value::atom(fn.module), atom("fun"), Value::list(args)}));
  }

  Value call_named(const SourceModule& m, const std::string& name, std::vector<Value>& args) {
    if (const FunDef* f = program_.find_function(m.name, name, static_cast<int>(args.size())))
      return call_function(m, *f, args);
    if (BuiltinFn b = find_builtin("", name, static_cast<int>(args.size()))) return b(args, ctx_);
    undef(m.name, name, args.size());
  }

  Value call_remote(const std::string& mod, const std::string& name, std::vector<Value>& args) {
    if (const SourceModule* m = program_.find_module(mod)) {
      const FunDef* f = program_.find_function(mod, name, static_cast<int>(args.size()));
      if (!f) undef(mod, name, args.size());
      return call_function(*m, *f, args);
    }
    if (BuiltinFn b = find_builtin(mod, name, static_cast<int>(args.size()))) return b(args, ctx_);
    undef(mod, name, args.size());
  }

  Value apply(const Value& f, std::vector<Value> args, const SourceModule* current) {
    if (f.is_fun()) {
      const Closure& c = f.closure();
      if (c.arity != static_cast<int>(args.size()))
        raise_error("badarity", Value::tuple({f, Value::list(args)}));
      if (c.kind == Closure::Kind::Lambda) return call_lambda(c, args);
      return call_remote(c.module, c.name, args);
    }
    if (f.is_atom()) {
      if (current) return call_named(*current, f.atom_name(), args);
      return call_remote("erlang", f.atom_name(), args);
    }
    if (f.is_tuple() && f.elements().size() == 2 && f.elements()[0].is_atom() && f.elements()[1].is_atom())
      return call_remote(f.elements()[0].atom_name(), f.elements()[1].atom_name(), args);
    raise_error("badfun", f);
  }

  // --- matching ----------------------------------------------------------

  bool match_all(const std::vector<syntax::ExprPtr>& ps, const std::vector<Value>& vs, Env& env,
                 std::size_t scope, const SourceModule& m) {
    if (ps.size() != vs.size()) return false;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (!match(*ps[i], vs[i], env, scope, m)) return false;
    return true;
  }

  bool match_prefix(const Value& prefix, const Value& v, const Expr& rest, Env& env, std::size_t scope,
                    const SourceModule& m) {
    const Value* p = &prefix;
    const Value* x = &v;
    for (; p->is_cons(); p = &p->tail(), x = &x->tail()) {
      if (!x->is_cons() || x->head() != p->head()) return false;
    }
    return match(rest, *x, env, scope, m);
  }

  // Variables bound at positions < scope are shadowed, not compared.
  bool match(const Expr& p, const Value& v, Env& env, std::size_t scope, const SourceModule& m) {
    switch (p.kind) {
      case ExprKind::Var: {
        if (p.text == "_") return true;
        if (const Value* bound = lookup(env, p.text, scope)) return *bound == v;
        env.emplace_back(p.text, v);
        return true;
      }
      case ExprKind::Integer: return v.is_int() && v.as_int() == p.integer;
      case ExprKind::Atom: return v.is_atom(p.text);
      case ExprKind::String: return v == Value::string(p.text);
      case ExprKind::Tuple: {
        if (!v.is_tuple() || v.elements().size() != p.children.size()) return false;
        for (std::size_t i = 0; i < p.children.size(); ++i)
          if (!match(*p.children[i], v.elements()[i], env, scope, m)) return false;
        return true;
      }
      case ExprKind::List: {
        const Value* x = &v;
        for (const auto& c : p.children) {
          if (!x->is_cons() || !match(*c, x->head(), env, scope, m)) return false;
          x = &x->tail();
        }
        if (p.tail) return match(*p.tail, *x, env, scope, m);
        return x->is_nil();
      }
      case ExprKind::Match:
        return match(*p.children[0], v, env, scope, m) && match(*p.children[1], v, env, scope, m);
      case ExprKind::BinOp:
        if (p.text == "++" && p.children[0]->kind == ExprKind::String)
          return match_prefix(Value::string(p.children[0]->text), v, *p.children[1], env, scope, m);
        break;
      default: break;
    }
    raise_error("illegal_pattern", Value::integer(p.pos.line));
  }

  bool guard_ok(const std::vector<std::vector<syntax::ExprPtr>>& guards, Env& env, const SourceModule& m) {
    if (guards.empty()) return true;
    for (const auto& conj : guards) {
      std::size_t mark = env.size();
      bool all = true;
      for (const auto& g : conj) {
        try {
          if (!eval(*g, env, m).is_atom("true")) {
            all = false;
            break;
          }
        } catch (const Raised&) {
          all = false;
          break;
        }
      }
      env.resize(mark);
      if (all) return true;
    }
    return false;
  }

  // --- expressions -------------------------------------------------------

  Value body(const std::vector<syntax::ExprPtr>& exprs, Env& env, const SourceModule& m) {
    Value last;
    for (const auto& e : exprs) last = eval(*e, env, m);
    return last;
  }

  Value scoped_clause(const Clause& c, Env& env, std::size_t mark, const SourceModule& m) {
    Value v = body(c.body, env, m);
    env.resize(mark);
    return v;
  }

  Value eval(const Expr& e, Env& env, const SourceModule& m) {
    tick(&e);
    try {
      return eval_inner(e, env, m);
    } catch (Raised& r) {
      if (!r.error.pos) r.error.pos = e.pos;
      throw;
    }
  }

  Value eval_inner(const Expr& e, Env& env, const SourceModule& m) {
    switch (e.kind) {
      case ExprKind::Integer: return Value::integer(e.integer);
      case ExprKind::String: return Value::string(e.text);
      case ExprKind::Atom: return Value::atom(e.text);
      case ExprKind::Var: {
        if (const Value* v = lookup(env, e.text)) return *v;
        raise_error("unbound", Value::atom(e.text));
      }
      case ExprKind::List: {
        std::vector<Value> elems;
        elems.reserve(e.children.size());
        for (const auto& c : e.children) elems.push_back(eval(*c, env, m));
        Value tail = e.tail ? eval(*e.tail, env, m) : Value::nil();
        if (!tail.is_list()) raise_error("improper_list", tail);
        return Value::list(elems, tail);
      }
      case ExprKind::Tuple: {
        std::vector<Value> elems;
        elems.reserve(e.children.size());
        for (const auto& c : e.children) elems.push_back(eval(*c, env, m));
        return Value::tuple(std::move(elems));
      }
      case ExprKind::BinOp: return binop(e, env, m);
      case ExprKind::UnOp: return unop(e.text, eval(*e.children[0], env, m));
      case ExprKind::Call: return call(e, env, m);
      case ExprKind::Remote: {
        Value mod = eval(*e.children[0], env, m);
        Value fun = eval(*e.children[1], env, m);
        return Value::tuple({mod, fun});
      }
      case ExprKind::FunRef: {
        auto c = std::make_shared<Closure>();
        c->kind = Closure::Kind::FunRef;
        c->module = e.module.empty() ? m.name : e.module;
        c->name = e.text;
        c->arity = static_cast<int>(e.integer);
        if (e.module.empty() && !program_.find_function(m.name, e.text, c->arity) &&
            find_builtin("", e.text, c->arity))
          c->module = "erlang";
        return Value::fun(std::move(c));
      }
      case ExprKind::Lambda: {
        auto c = std::make_shared<Closure>();
        c->kind = Closure::Kind::Lambda;
        c->module = m.name;
        c->lambda = shared_from(e, m);
        c->env = env;
        c->arity = static_cast<int>(e.clauses.front().patterns.size());
        return Value::fun(std::move(c));
      }
      case ExprKind::Case: {
        Value v = eval(*e.children[0], env, m);
        std::size_t mark = env.size();
        for (const Clause& c : e.clauses) {
          if (match(*c.patterns[0], v, env, 0, m) && guard_ok(c.guards, env, m)) return scoped_clause(c, env, mark, m);
          env.resize(mark);
        }
        raise_error("case_clause", v);
      }
      case ExprKind::If: {
        std::size_t mark = env.size();
        for (const Clause& c : e.clauses)
          if (guard_ok(c.guards, env, m)) return scoped_clause(c, env, mark, m);
        raise_error(atom("if_clause"));
      }
      case ExprKind::Match: {
        Value v = eval(*e.children[1], env, m);
        std::size_t mark = env.size();
        if (!match(*e.children[0], v, env, 0, m)) {
          env.resize(mark);
          raise_error("badmatch", v);
        }
        return v;
      }
      case ExprKind::ListComp: {
        std::vector<Value> out;
        std::size_t mark = env.size();
        comprehension(e, 0, env, m, out);
        env.resize(mark);
        return Value::list(out);
      }
      case ExprKind::Try: return try_expr(e, env, m);
      case ExprKind::Block: return body(e.children, env, m);
      case ExprKind::TraceEmit: return emit(e, env, m);
    }
    raise_error(atom("badarg"));
  }

  // Lambda nodes are shared subtrees of the module; find the owning pointer by
  // walking the memo filled on first use.
  syntax::ExprPtr shared_from(const Expr& e, const SourceModule& m) {
    auto it = lambda_owners_.find(&e);
    if (it != lambda_owners_.end()) return it->second;
    const SourceModule* key = &m;
    if (indexed_.insert(key).second) index_lambdas(m);
    it = lambda_owners_.find(&e);
    if (it != lambda_owners_.end()) return it->second;
    // Not reachable from the module (a detached expression): copy it.
    auto copy = std::make_shared<Expr>(e);
    lambda_owners_.emplace(&e, copy);
    return copy;
  }

  void index_lambdas(const SourceModule& m) {
    std::function<void(const syntax::ExprPtr&)> walk = [&](const syntax::ExprPtr& x) {
      if (!x) return;
      if (x->kind == ExprKind::Lambda) lambda_owners_.emplace(x.get(), x);
      for (const auto& c : x->children) walk(c);
      walk(x->tail);
      for (const auto& c : x->clauses) {
        for (const auto& p : c.patterns) walk(p);
        for (const auto& g : c.guards)
          for (const auto& y : g) walk(y);
        for (const auto& b : c.body) walk(b);
      }
      for (const auto& q : x->qualifiers) {
        walk(q.pattern);
        walk(q.expr);
      }
    };
    for (const FunDef& f : m.functions)
      for (const Clause& c : f.clauses)
        for (const auto& b : c.body) walk(b);
  }

  void comprehension(const Expr& e, std::size_t qi, Env& env, const SourceModule& m, std::vector<Value>& out) {
    if (qi == e.qualifiers.size()) {
      out.push_back(eval(*e.children[0], env, m));
      return;
    }
    const syntax::Qualifier& q = e.qualifiers[qi];
    if (q.generator) {
      Value list = eval(*q.expr, env, m);
      if (!list.is_list() || !list.is_proper_list()) raise_error("bad_generator", list);
      for (const Value* p = &list; p->is_cons(); p = &p->tail()) {
        std::size_t mark = env.size();
        if (match(*q.pattern, p->head(), env, mark, m)) comprehension(e, qi + 1, env, m, out);
        env.resize(mark);
      }
      return;
    }
    Value keep = eval(*q.expr, env, m);
    if (keep.is_atom("true")) comprehension(e, qi + 1, env, m, out);
    else if (!keep.is_atom("false")) raise_error("bad_filter", keep);
  }

  Value try_expr(const Expr& e, Env& env, const SourceModule& m) {
    std::size_t mark = env.size();
    try {
      Value v = body(e.children, env, m);
      env.resize(mark);
      return v;
    } catch (Raised& r) {
      env.resize(mark);
      RuntimeError err = r.error;
      for (const Clause& c : e.clauses) {
        if (match(*c.patterns[0], err.cls, env, 0, m) && match(*c.patterns[1], err.reason, env, 0, m) &&
            guard_ok(c.guards, env, m))
          return scoped_clause(c, env, mark, m);
        env.resize(mark);
      }
      throw;
    }
  }

  Value emit(const Expr& e, Env& env, const SourceModule& m) {
    std::vector<Value> vs;
    for (const auto& c : e.children) vs.push_back(eval(*c, env, m));
    const syntax::EmitInfo& info = *e.emit;
    switch (info.tag) {
      case syntax::TraceTag::AddI: events_.push_back(AddI{info.poi, vs[0], vs[1]}); break;
      case syntax::TraceTag::AddRef: events_.push_back(AddRef{info.poi, vs[0], vs[1]}); break;
      case syntax::TraceTag::Add: events_.push_back(Add{info.poi, vs[0]}); break;
      case syntax::TraceTag::Begin: events_.push_back(Begin{vs[0], info.frame, info.origin, info.callee}); break;
      case syntax::TraceTag::End: events_.push_back(End{vs[0]}); break;
    }
    return atom("ok");
  }

  Value call(const Expr& e, Env& env, const SourceModule& m) {
    const Expr& callee = *e.children[0];
    auto args_of = [&] {
      std::vector<Value> args;
      args.reserve(e.children.size() - 1);
      for (std::size_t i = 1; i < e.children.size(); ++i) args.push_back(eval(*e.children[i], env, m));
      return args;
    };
    if (callee.kind == ExprKind::Atom) {
      if (e.synthetic && callee.text == "make_ref" && e.children.size() == 1) return refs_.next(true);
      auto args = args_of();
      return call_named(m, callee.text, args);
    }
    if (callee.kind == ExprKind::Remote) {
      Value mod = eval(*callee.children[0], env, m);
      Value fun = eval(*callee.children[1], env, m);
      auto args = args_of();
      if (!mod.is_atom() || !fun.is_atom()) raise_error("badfun", Value::tuple({mod, fun}));
      return call_remote(mod.atom_name(), fun.atom_name(), args);
    }
    Value f = eval(callee, env, m);
    return apply(f, args_of(), &m);
  }

  Value binop(const Expr& e, Env& env, const SourceModule& m) {
    const std::string& op = e.text;
    if (op == "andalso" || op == "orelse") {
      Value l = eval(*e.children[0], env, m);
      if (!l.is_boolean()) raise_error("badarg", l);
      bool short_value = op == "orelse";
      if (l.is_atom("true") == short_value) return l;
      return eval(*e.children[1], env, m);
    }
    Value l = eval(*e.children[0], env, m);
    Value r = eval(*e.children[1], env, m);
    if (op == "==" || op == "=:=") return Value::boolean(l == r);
    if (op == "/=" || op == "=/=") return Value::boolean(l != r);
    if (op == "<") return Value::boolean(compare(l, r) < 0);
    if (op == ">") return Value::boolean(compare(l, r) > 0);
    if (op == "=<") return Value::boolean(compare(l, r) <= 0);
    if (op == ">=") return Value::boolean(compare(l, r) >= 0);
    if (op == "++") {
      if (!l.is_list() || !l.is_proper_list()) badarg();
      return Value::list(l.to_vector(), r);
    }
    if (op == "--") {
      if (!l.is_list() || !l.is_proper_list() || !r.is_list() || !r.is_proper_list()) badarg();
      auto xs = l.to_vector();
      for (const Value& y : r.to_vector()) {
        for (auto it = xs.begin(); it != xs.end(); ++it)
          if (*it == y) {
            xs.erase(it);
            break;
          }
      }
      return Value::list(xs);
    }
    if (op == "and" || op == "or" || op == "xor") {
      if (!l.is_boolean() || !r.is_boolean()) badarg();
      bool a = l.is_atom("true");
      bool b = r.is_atom("true");
      return Value::boolean(op == "and" ? a && b : op == "or" ? a || b : a != b);
    }
    if (!l.is_int() || !r.is_int()) badarith();
    std::int64_t a = l.as_int();
    std::int64_t b = r.as_int();
    std::int64_t out = 0;
    if (op == "+") {
      if (__builtin_add_overflow(a, b, &out)) badarith();
    } else if (op == "-") {
      if (__builtin_sub_overflow(a, b, &out)) badarith();
    } else if (op == "*") {
      if (__builtin_mul_overflow(a, b, &out)) badarith();
    } else if (op == "div" || op == "/") {
      if (b == 0 || (a == INT64_MIN && b == -1)) badarith();
      if (op == "/" && a % b != 0) badarith();
      out = a / b;
    } else if (op == "rem") {
      if (b == 0) badarith();
      out = b == -1 ? 0 : a % b;
    } else if (op == "band") {
      out = a & b;
    } else if (op == "bor") {
      out = a | b;
    } else if (op == "bxor") {
      out = a ^ b;
    } else if (op == "bsl" || op == "bsr") {
      std::int64_t shift = op == "bsl" ? b : -b;
      if (shift >= 0) {
        if (shift >= 63 || (a != 0 && (a > (INT64_MAX >> shift) || a < (INT64_MIN >> shift)))) {
          if (a != 0) badarith();
        }
        out = a == 0 ? 0 : static_cast<std::int64_t>(static_cast<std::uint64_t>(a) << shift);
      } else {
        out = -shift >= 63 ? (a < 0 ? -1 : 0) : a >> -shift;
      }
    } else {
      badarith();
    }
    return Value::integer(out);
  }

  static Value unop(const std::string& op, const Value& v) {
    if (op == "not") {
      if (!v.is_boolean()) badarg();
      return Value::boolean(v.is_atom("false"));
    }
    if (!v.is_int()) badarith();
    if (op == "-") {
      if (v.as_int() == INT64_MIN) badarith();
      return Value::integer(-v.as_int());
    }
    if (op == "bnot") return Value::integer(~v.as_int());
    return v;
  }

  const Program& program_;
  const Budget& budget_;
  std::vector<TraceEvent>& events_;
  BuiltinContext ctx_;
  RefGenerator refs_;
  std::int64_t steps_ = 0;
  char* stack_base_ = nullptr;
  std::unordered_map<const Expr*, syntax::ExprPtr> lambda_owners_;
  std::unordered_set<const SourceModule*> indexed_;
};

struct Job {
  const Program* program;
  const FunctionId* fn;
  const std::vector<Value>* args;
  const Budget* budget;
  EvalOutcome outcome;
  std::exception_ptr failure;
};

void* run_job(void* raw) {
  auto* job = static_cast<Job*>(raw);
  try {
    Evaluator ev(*job->program, *job->budget, job->outcome.events);
    try {
      job->outcome.result = ev.call_entry(*job->fn, *job->args);
    } catch (const Raised& r) {
      job->outcome.error = r.error;
    } catch (const Aborted& a) {
      job->outcome.error = a.error;
    }
    job->outcome.steps_used = ev.steps();
  } catch (...) {
    job->failure = std::current_exception();
  }
  return nullptr;
}

}  // namespace

EvalOutcome eval_itc(const Program& program, const FunctionId& fn, const std::vector<Value>& args,
                     const Budget& budget) {
  if (program.modules().empty()) throw std::invalid_argument("eval_itc: empty program");
  Job job{&program, &fn, &args, &budget, {}, nullptr};
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStackBytes);
  pthread_t thread;
  if (pthread_create(&thread, &attr, &run_job, &job) != 0) {
    pthread_attr_destroy(&attr);
    throw std::runtime_error("eval_itc: cannot start evaluator thread");
  }
  pthread_join(thread, nullptr);
  pthread_attr_destroy(&attr);
  if (job.failure) std::rethrow_exception(job.failure);
  return std::move(job.outcome);
}

}  // namespace poitest::eval
