// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/instrument/instrument.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>

#include "poitest/syntax/query.hpp"

namespace poitest::instrument {
namespace {

using syntax::Clause;
using syntax::EmitInfo;
using syntax::Expr;
using syntax::ExprKind;
using syntax::ExprPtr;
using syntax::FunDef;
using syntax::SourceModule;
using syntax::SourcePos;
using syntax::TraceTag;

using Hook = std::function<ExprPtr(const ExprPtr& original, const ExprPtr& rebuilt)>;

ExprPtr rewrite(const ExprPtr& e, const Hook& hook);

bool rewrite_body(std::vector<ExprPtr>& body, const Hook& hook) {
  bool changed = false;
  for (auto& b : body) {
    ExprPtr r = rewrite(b, hook);
    if (r != b) {
      b = std::move(r);
      changed = true;
    }
  }
  return changed;
}

ExprPtr rewrite(const ExprPtr& e, const Hook& hook) {
  if (!e) return e;
  std::shared_ptr<Expr> copy;
  auto mut = [&]() -> Expr& {
    if (!copy) copy = std::make_shared<Expr>(*e);
    return *copy;
  };
  auto child = [&](std::size_t i) {
    ExprPtr r = rewrite(e->children[i], hook);
    if (r != e->children[i]) mut().children[i] = std::move(r);
  };
  switch (e->kind) {
    case ExprKind::TraceEmit:
    case ExprKind::Remote:
      break;
    case ExprKind::Match:
      child(1);
      break;
    case ExprKind::ListComp:
      child(0);
      for (std::size_t i = 0; i < e->qualifiers.size(); ++i) {
        ExprPtr r = rewrite(e->qualifiers[i].expr, hook);
        if (r != e->qualifiers[i].expr) mut().qualifiers[i].expr = std::move(r);
      }
      break;
    default: {
      for (std::size_t i = 0; i < e->children.size(); ++i) child(i);
      ExprPtr t = rewrite(e->tail, hook);
      if (t != e->tail) mut().tail = std::move(t);
      for (std::size_t i = 0; i < e->clauses.size(); ++i) {
        std::vector<ExprPtr> body = e->clauses[i].body;
        if (rewrite_body(body, hook)) mut().clauses[i].body = std::move(body);
      }
      break;
    }
  }
  return hook(e, copy ? copy : e);
}

ExprPtr flagged(const ExprPtr& e) {
  auto copy = std::make_shared<Expr>(*e);
  copy->instrumented = true;
  return copy;
}

bool static_callee(const Expr& callee) {
  return callee.kind == ExprKind::Atom ||
         (callee.kind == ExprKind::Remote && callee.children[0]->kind == ExprKind::Atom &&
          callee.children[1]->kind == ExprKind::Atom);
}

std::optional<FunctionId> static_callee_id(const Expr& call) {
  const Expr& c = *call.children[0];
  int arity = static_cast<int>(call.children.size()) - 1;
  if (c.kind == ExprKind::Atom) return FunctionId{c.text, arity};
  if (static_callee(c)) return FunctionId{c.children[1]->text, arity};
  return call.callee_hint;
}

/// Node factory for synthetic code. Every node is marked synthetic and takes
/// the source position of the construct it stands for.
class Builder {
 public:
  explicit Builder(SourceModule& m) : m_(m) {}

  std::string fresh(const char* tag) {
    return std::string(syntax::kReservedVarPrefix) + tag + std::to_string(m_.fresh_counter++);
  }

  std::shared_ptr<Expr> node(ExprKind kind, const SourcePos& at) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = SourcePos{at.line, at.column, m_.next_node_id++};
    e->synthetic = true;
    return e;
  }

  ExprPtr var(const std::string& name, const SourcePos& at) {
    auto e = node(ExprKind::Var, at);
    e->text = name;
    return e;
  }

  ExprPtr atom(const std::string& name, const SourcePos& at) {
    auto e = node(ExprKind::Atom, at);
    e->text = name;
    return e;
  }

  ExprPtr match(const std::string& name, ExprPtr value, const SourcePos& at) {
    auto e = node(ExprKind::Match, at);
    e->children = {var(name, at), std::move(value)};
    return e;
  }

  ExprPtr block(std::vector<ExprPtr> body, const SourcePos& at) {
    auto e = node(ExprKind::Block, at);
    e->children = std::move(body);
    return e;
  }

  ExprPtr make_ref(const SourcePos& at) {
    auto e = node(ExprKind::Call, at);
    e->children = {atom("make_ref", at)};
    return e;
  }

  ExprPtr emit(EmitInfo info, std::vector<ExprPtr> args, const SourcePos& at) {
    auto e = node(ExprKind::TraceEmit, at);
    e->emit = std::move(info);
    e->children = std::move(args);
    return e;
  }

  ExprPtr add(TraceTag tag, const Poi& poi, std::vector<ExprPtr> args, const SourcePos& at) {
    EmitInfo info;
    info.tag = tag;
    info.poi = poi;
    return emit(std::move(info), std::move(args), at);
  }

  ExprPtr end(const std::string& ref, const SourcePos& at) {
    EmitInfo info;
    info.tag = TraceTag::End;
    return emit(std::move(info), {var(ref, at)}, at);
  }

  /// try V = Inner, End, V catch C:E -> End, erlang:raise(C, E) end
  ExprPtr guarded(std::vector<ExprPtr> body, const std::string& ref, const SourcePos& at) {
    std::string v = fresh("V");
    std::string cls = fresh("C");
    std::string reason = fresh("E");
    ExprPtr last = body.back();
    body.back() = match(v, last, at);
    body.push_back(end(ref, at));
    body.push_back(var(v, at));
    auto t = node(ExprKind::Try, at);
    t->children = std::move(body);
    Clause c;
    c.pos = t->pos;
    c.patterns = {var(cls, at), var(reason, at)};
    auto raise = node(ExprKind::Call, at);
    auto remote = node(ExprKind::Remote, at);
    remote->children = {atom("erlang", at), atom("raise", at)};
    raise->children = {remote, var(cls, at), var(reason, at)};
    c.body = {end(ref, at), raise};
    t->clauses.push_back(std::move(c));
    return t;
  }

 private:
  SourceModule& m_;
};

void rewrite_module(SourceModule& m, const std::function<Hook(const FunDef&)>& hook_for) {
  for (auto& f : m.functions) {
    Hook hook = hook_for(f);
    for (auto& c : f.clauses) rewrite_body(c.body, hook);
  }
}

std::vector<Poi> own_pois(const SourceModule& m, const std::vector<Poi>& pois) {
  std::vector<Poi> out;
  for (const auto& p : pois)
    if (poi_in_module(p, m)) out.push_back(p);
  return out;
}

std::map<int, std::vector<Poi>> resolve_all(const SourceModule& m, const std::vector<Poi>& pois,
                                            bool calls_only) {
  std::map<int, std::vector<Poi>> targets;
  for (const auto& p : own_pois(m, pois)) {
    int id = resolve_poi(m, p);
    const Expr* e = syntax::find_node(m, id);
    if (calls_only && e->kind != ExprKind::Call)
      throw NotACall("POI " + to_string(p) + " is not a call");
    auto& list = targets[id];
    if (std::find(list.begin(), list.end(), p) == list.end()) list.push_back(p);
  }
  return targets;
}

ExprPtr wrap_value(Builder& b, const ExprPtr& e, const Poi& poi) {
  const SourcePos& at = e->pos;
  std::string v = b.fresh("V");
  return b.block({b.match(v, e, at), b.add(TraceTag::Add, poi, {b.var(v, at)}, at), b.var(v, at)}, at);
}

/// Hoists callee and arguments, traces each with add_i under a fresh
/// reference, then performs the call and traces its result.
ExprPtr wrap_call(Builder& b, const ExprPtr& call, const Poi& poi, bool ait) {
  const SourcePos& at = call->pos;
  std::string ref = b.fresh("R");
  std::vector<ExprPtr> body = {b.match(ref, b.make_ref(at), at)};
  const ExprPtr& callee = call->children[0];
  ExprPtr callee_value = callee;
  if (callee->kind == ExprKind::Atom) {
    callee_value = b.atom(callee->text, callee->pos);
  } else if (callee->kind == ExprKind::Remote) {
    auto t = b.node(ExprKind::Tuple, callee->pos);
    t->children = callee->children;
    callee_value = t;
  }
  std::vector<std::string> names;
  names.push_back(b.fresh("F"));
  body.push_back(b.match(names[0], callee_value, at));
  for (std::size_t i = 1; i < call->children.size(); ++i) {
    names.push_back(b.fresh("A"));
    body.push_back(b.match(names.back(), call->children[i], call->children[i]->pos));
  }
  for (const auto& n : names) body.push_back(b.add(TraceTag::AddI, poi, {b.var(ref, at), b.var(n, at)}, at));
  auto inner = std::make_shared<Expr>(*call);
  inner->instrumented = true;
  inner->callee_hint = static_callee_id(*call);
  inner->children.clear();
  for (const auto& n : names) inner->children.push_back(b.var(n, at));
  std::string v = b.fresh("V");
  body.push_back(b.match(v, inner, at));
  if (ait) body.push_back(b.add(TraceTag::Add, poi, {b.var(v, at)}, at));
  else body.push_back(b.add(TraceTag::AddRef, poi, {b.var(ref, at), b.var(v, at)}, at));
  body.push_back(b.var(v, at));
  return b.block(std::move(body), at);
}

SourceModule instrument_calls(const SourceModule& m, const std::vector<Poi>& pois, bool ait) {
  auto targets = resolve_all(m, pois, true);
  SourceModule out = m;
  Builder b(out);
  rewrite_module(out, [&](const FunDef&) -> Hook {
    return [&](const ExprPtr& orig, const ExprPtr& rebuilt) {
      if (orig->synthetic) return rebuilt;
      auto it = targets.find(orig->pos.node_id);
      if (it == targets.end()) return rebuilt;
      ExprPtr cur = wrap_call(b, rebuilt, it->second[0], ait);
      for (std::size_t i = 1; i < it->second.size(); ++i) cur = wrap_value(b, cur, it->second[i]);
      return cur;
    };
  });
  return out;
}

bool trivial(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Var:
    case ExprKind::Integer:
    case ExprKind::Atom:
    case ExprKind::String:
    case ExprKind::FunRef:
      return true;
    default:
      return false;
  }
}

ExprPtr wrap_call_site(Builder& b, const ExprPtr& call, const SourceModule& m, const FunDef& f) {
  const SourcePos& at = call->pos;
  std::vector<ExprPtr> body;
  auto inner = std::make_shared<Expr>(*call);
  auto hoist = [&](std::size_t i) {
    const ExprPtr& c = call->children[i];
    if (trivial(*c)) return;
    std::string n = b.fresh("S");
    body.push_back(b.match(n, c, c->pos));
    inner->children[i] = b.var(n, c->pos);
  };
  if (!static_callee(*call->children[0])) hoist(0);
  for (std::size_t i = 1; i < call->children.size(); ++i) hoist(i);
  std::string ref = b.fresh("R");
  body.push_back(b.match(ref, b.make_ref(at), at));
  EmitInfo info;
  info.tag = TraceTag::Begin;
  info.frame = Frame{m.name, f.name, f.arity, at.line};
  info.origin = FrameOrigin::CallSite;
  info.callee = static_callee_id(*call);
  body.push_back(b.emit(std::move(info), {b.var(ref, at)}, at));
  body.push_back(b.guarded({inner}, ref, at));
  return b.block(std::move(body), at);
}

void wrap_definition(Builder& b, Clause& c, const SourceModule& m, const FunDef& f) {
  const SourcePos& at = c.pos;
  std::string ref = b.fresh("R");
  EmitInfo info;
  info.tag = TraceTag::Begin;
  info.frame = Frame{m.name, f.name, f.arity, at.line};
  info.origin = FrameOrigin::Definition;
  std::vector<ExprPtr> body = {b.match(ref, b.make_ref(at), at), b.emit(std::move(info), {b.var(ref, at)}, at)};
  body.push_back(b.guarded(c.body, ref, at));
  c.body = std::move(body);
}

std::string stem_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

}  // namespace

std::string to_string(CallMode mode) {
  switch (mode) {
    case CallMode::Standard: return "standard";
    case CallMode::Enhanced: return "enhanced";
    case CallMode::Ait: return "ait";
  }
  return "?";
}

std::string to_string(StackMode mode) {
  switch (mode) {
    case StackMode::Off: return "off";
    case StackMode::Calls: return "calls";
    case StackMode::Defs: return "defs";
    case StackMode::Both: return "both";
  }
  return "?";
}

bool poi_in_module(const Poi& p, const SourceModule& m) {
  if (p.module == m.name) return true;
  if (m.source_path.empty()) return false;
  if (p.module == m.source_path) return true;
  std::filesystem::path sp(m.source_path);
  if (p.module == sp.filename().string()) return true;
  if (p.module == sp.stem().string()) return true;
  return stem_of(p.module) == m.name && std::filesystem::path(p.module).extension() == ".mf";
}

int resolve_poi(const SourceModule& m, const Poi& p) {
  if (!poi_in_module(p, m)) throw PoiNotFound("POI " + to_string(p) + " does not name module " + m.name);
  auto ids = syntax::find_expressions(m, p.line, p.kind);
  if (ids.empty()) {
    throw PoiNotFound("no " + to_string(p.kind) + " expression on line " + std::to_string(p.line) + " of " +
                      m.name);
  }
  if (p.occurrence < 1 || static_cast<std::size_t>(p.occurrence) > ids.size())
    throw PoiOccurrenceOutOfRange("POI " + to_string(p) + " asks for occurrence " +
                                  std::to_string(p.occurrence) + " but line " + std::to_string(p.line) +
                                  " has " + std::to_string(ids.size()));
  int id = ids[static_cast<std::size_t>(p.occurrence - 1)];
  if (syntax::find_node(m, id)->instrumented)
    throw AlreadyInstrumented("POI " + to_string(p) + " is already instrumented");
  return id;
}

SourceModule instrument_value_pois(const SourceModule& m, const std::vector<Poi>& pois) {
  auto targets = resolve_all(m, pois, false);
  SourceModule out = m;
  Builder b(out);
  rewrite_module(out, [&](const FunDef&) -> Hook {
    return [&](const ExprPtr& orig, const ExprPtr& rebuilt) {
      if (orig->synthetic) return rebuilt;
      auto it = targets.find(orig->pos.node_id);
      if (it == targets.end()) return rebuilt;
      ExprPtr cur = flagged(rebuilt);
      for (const auto& p : it->second) cur = wrap_value(b, cur, p);
      return cur;
    };
  });
  return out;
}

SourceModule instrument_call_pois(const SourceModule& m, const std::vector<Poi>& pois) {
  return instrument_calls(m, pois, false);
}

SourceModule instrument_ait_calls(const SourceModule& m, const std::vector<Poi>& pois) {
  return instrument_calls(m, pois, true);
}

SourceModule instrument_stack_tracing(const SourceModule& m, StackMode mode) {
  if (mode == StackMode::Off) return m;
  SourceModule out = m;
  Builder b(out);
  if (mode == StackMode::Calls || mode == StackMode::Both) {
    rewrite_module(out, [&](const FunDef& f) -> Hook {
      return [&, fp = &f](const ExprPtr& orig, const ExprPtr& rebuilt) {
        if (orig->synthetic || orig->kind != ExprKind::Call) return rebuilt;
        return wrap_call_site(b, rebuilt, out, *fp);
      };
    });
  }
  if (mode == StackMode::Defs || mode == StackMode::Both) {
    for (auto& f : out.functions)
      for (auto& c : f.clauses) wrap_definition(b, c, out, f);
  }
  return out;
}

SourceModule apply_plan(const SourceModule& m, const InstrumentationPlan& plan) {
  std::vector<Poi> calls;
  std::vector<Poi> values;
  for (const auto& p : own_pois(m, plan.pois)) {
    if (plan.call_mode != CallMode::Standard && p.kind.tag == "call") calls.push_back(p);
    else values.push_back(p);
  }
  SourceModule out = m;
  if (!calls.empty())
    out = plan.call_mode == CallMode::Ait ? instrument_ait_calls(out, calls) : instrument_call_pois(out, calls);
  if (!values.empty()) out = instrument_value_pois(out, values);
  return instrument_stack_tracing(out, plan.stack_mode);
}

}  // namespace poitest::instrument
