// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/testgen/testgen.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace poitest::testgen {
namespace {

using syntax::TypeExpr;

const std::vector<std::string> kAtoms = {"a", "b", "c", "ok", "error", "undefined"};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Value random_string(Rng& rng) {
  std::string s;
  auto n = uniform(rng, 0, 8);
  for (std::int64_t i = 0; i < n; ++i) s.push_back(static_cast<char>(uniform(rng, 0, 3) == 0 ? ' ' : 'a' + uniform(rng, 0, 25)));
  return Value::string(s);
}

// Element type used when inserting into or replacing inside a list argument.
Value fresh_element(const std::vector<Value>& elems, const TypeExpr* elem_type, Rng& rng) {
  if (elem_type) return generate_value(*elem_type, rng);
  if (!elems.empty() && elems.front().is_int()) return Value::integer(uniform(rng, -10, 10));
  return generate_universal(rng, 1);
}

const TypeExpr* element_type(const std::optional<syntax::FunSpec>& spec, std::size_t arg) {
  if (!spec || arg >= spec->params.size()) return nullptr;
  const TypeExpr& t = spec->params[arg];
  if (t.kind != TypeExpr::Kind::List || t.children.empty()) return nullptr;
  return &t.children[0];
}

std::vector<Poi> project(const compare::PoiRelation& rel, bool first) {
  std::vector<Poi> out;
  for (const auto& [a, b] : rel) {
    const Poi& p = first ? a : b;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

eval::Program instrument_program(const std::vector<syntax::SourceModule>& modules,
                                 const instrument::InstrumentationPlan& plan) {
  for (const auto& p : plan.pois) {
    bool owned = std::any_of(modules.begin(), modules.end(),
                             [&](const syntax::SourceModule& m) { return instrument::poi_in_module(p, m); });
    if (!owned) throw instrument::PoiNotFound("POI " + to_string(p) + " names no loaded module");
  }
  std::vector<syntax::SourceModule> out;
  for (const auto& m : modules) out.push_back(instrument::apply_plan(m, plan));
  return eval::Program(std::move(out));
}

compare::VersionRun run_version(const eval::Program& p, const Itc& itc, const eval::Budget& budget,
                                const tracer::CollectOptions& opts) {
  eval::EvalOutcome out = eval::eval_itc(p, itc.function, itc.args, budget);
  compare::VersionRun run{tracer::collect(out.events, opts), out.error};
  if (out.timed_out()) run.trace.partial = true;
  return run;
}

// Counts the run and returns the ITC's first UB type, if any.
std::optional<std::string> record(FunctionResult& fr, const Itc& itc, const Harness::Outcome& out) {
  ++fr.generated;
  if (out.findings.empty()) return std::nullopt;
  ++fr.mismatching;
  fr.failing.push_back(itc);
  std::set<std::string> counted;
  for (const auto& finding : out.findings) {
    if (!counted.insert(finding.ub_type).second) continue;
    auto g = std::find_if(fr.groups.begin(), fr.groups.end(),
                          [&](const UbGroup& u) { return u.ub_type == finding.ub_type; });
    if (g == fr.groups.end()) {
      UbGroup ng{finding.ub_type, 0, itc, {}};
      for (const auto& x : out.findings)
        if (x.ub_type == finding.ub_type) ng.findings.push_back(x);
      fr.groups.push_back(std::move(ng));
      g = fr.groups.end() - 1;
    }
    ++g->count;
  }
  return out.findings.front().ub_type;
}

}  // namespace

Value generate_value(const TypeExpr& type, Rng& rng) {
  switch (type.kind) {
    case TypeExpr::Kind::Integer: return Value::integer(uniform(rng, -10, 10));
    case TypeExpr::Kind::NonNegInteger: return Value::integer(uniform(rng, 0, 10));
    case TypeExpr::Kind::PosInteger: return Value::integer(uniform(rng, 1, 10));
    case TypeExpr::Kind::Atom: return Value::atom(kAtoms[uniform(rng, 0, kAtoms.size() - 1)]);
    case TypeExpr::Kind::Boolean: return Value::boolean(uniform(rng, 0, 1) == 1);
    case TypeExpr::Kind::Any: return generate_universal(rng);
    case TypeExpr::Kind::String: return random_string(rng);
    case TypeExpr::Kind::Literal: return Value::atom(type.literal);
    case TypeExpr::Kind::List: {
      std::vector<Value> xs;
      auto n = uniform(rng, 0, 8);
      for (std::int64_t i = 0; i < n; ++i)
        xs.push_back(type.children.empty() ? generate_universal(rng, 1) : generate_value(type.children[0], rng));
      return Value::list(xs);
    }
    case TypeExpr::Kind::Tuple: {
      std::vector<Value> xs;
      for (const auto& c : type.children) xs.push_back(generate_value(c, rng));
      return Value::tuple(std::move(xs));
    }
  }
  return Value::nil();
}

Value generate_universal(Rng& rng, int depth) {
  int choice = static_cast<int>(uniform(rng, 0, depth >= 2 ? 1 : 3));
  switch (choice) {
    case 0: return Value::integer(uniform(rng, -10, 10));
    case 1: return Value::atom(kAtoms[uniform(rng, 0, kAtoms.size() - 1)]);
    case 2: {
      std::vector<Value> xs;
      auto n = uniform(rng, 0, 4);
      for (std::int64_t i = 0; i < n; ++i) xs.push_back(generate_universal(rng, depth + 1));
      return Value::list(xs);
    }
    default: {
      std::vector<Value> xs;
      auto n = uniform(rng, 0, 3);
      for (std::int64_t i = 0; i < n; ++i) xs.push_back(generate_universal(rng, depth + 1));
      return Value::tuple(std::move(xs));
    }
  }
}

Itc generate_itc(const syntax::FunDef& f, Rng& rng) {
  Itc itc;
  itc.function = f.id();
  for (int i = 0; i < f.arity; ++i) {
    if (f.spec && static_cast<std::size_t>(i) < f.spec->params.size())
      itc.args.push_back(generate_value(f.spec->params[i], rng));
    else
      itc.args.push_back(generate_universal(rng));
  }
  return itc;
}

std::vector<Itc> generate_initial_itcs(const syntax::SourceModule& m, const std::vector<FunctionId>& funs, Rng& rng) {
  std::vector<Itc> out;
  for (const auto& id : funs) {
    const syntax::FunDef* f = m.find_function(id.name, id.arity);
    if (!f) throw UnknownInputFunction("module " + m.name + " has no function " + to_string(id));
    out.push_back(generate_itc(*f, rng));
  }
  return out;
}

Itc mutate_itc(const Itc& itc, Rng& rng, const std::optional<syntax::FunSpec>& spec) {
  if (itc.args.empty()) throw NoMutableArgs(to_string(itc.function) + " takes no arguments");
  auto arg = static_cast<std::size_t>(uniform(rng, 0, itc.args.size() - 1));
  const Value& v = itc.args[arg];

  std::vector<MutationOp> ops;
  std::vector<Value> elems;
  bool proper = v.is_proper_list();
  if (v.is_int()) {
    ops = {MutationOp::IntNudge, MutationOp::Replace};
  } else if (proper) {
    elems = v.to_vector();
    ops.push_back(MutationOp::Insert);
    if (!elems.empty()) {
      ops.insert(ops.end(), {MutationOp::Delete, MutationOp::Duplicate, MutationOp::Replace, MutationOp::Truncate});
      if (std::any_of(elems.begin(), elems.end(), [](const Value& e) { return e.is_int(); }))
        ops.push_back(MutationOp::IntNudge);
    }
    if (elems.size() >= 2) ops.push_back(MutationOp::Shuffle);
  } else {
    ops = {MutationOp::Replace};
  }
  MutationOp op = ops[uniform(rng, 0, ops.size() - 1)];

  auto nudge = [&](std::int64_t x) {
    std::int64_t d = uniform(rng, 1, 3);
    return Value::integer(uniform(rng, 0, 1) ? x + d : x - d);
  };

  Value result = v;
  const TypeExpr* elem_type = element_type(spec, arg);
  if (v.is_int()) {
    result = op == MutationOp::IntNudge ? nudge(v.as_int()) : Value::integer(uniform(rng, -10, 10));
  } else if (proper) {
    auto pos = [&](std::size_t n) { return static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1)); };
    switch (op) {
      case MutationOp::Insert: {
        std::size_t at = pos(elems.size() + 1);
        elems.insert(elems.begin() + at, fresh_element(elems, elem_type, rng));
        break;
      }
      case MutationOp::Delete: elems.erase(elems.begin() + pos(elems.size())); break;
      case MutationOp::Duplicate: {
        std::size_t at = pos(elems.size());
        elems.insert(elems.begin() + at, elems[at]);
        break;
      }
      case MutationOp::Replace: elems[pos(elems.size())] = fresh_element(elems, elem_type, rng); break;
      case MutationOp::Truncate: elems.resize(pos(elems.size())); break;
      case MutationOp::Shuffle: std::shuffle(elems.begin(), elems.end(), rng); break;
      case MutationOp::IntNudge: {
        std::vector<std::size_t> ints;
        for (std::size_t i = 0; i < elems.size(); ++i)
          if (elems[i].is_int()) ints.push_back(i);
        std::size_t at = ints[pos(ints.size())];
        elems[at] = nudge(elems[at].as_int());
        break;
      }
    }
    result = Value::list(elems);
  } else if (spec && arg < spec->params.size()) {
    result = generate_value(spec->params[arg], rng);
  } else {
    result = generate_universal(rng);
  }

  Itc out;
  out.function = itc.function;
  out.args = itc.args;
  out.args[arg] = result;
  out.mutation = op;
  out.parent = to_string(itc);
  return out;
}

std::optional<std::size_t> schedule_next(const std::vector<PoolEntry>& pool, Rng& rng, const ScheduleWeights& w) {
  double total = 0;
  for (const auto& e : pool)
    if (!e.itc.args.empty()) total += e.ub_type ? w.ub : w.ok;
  if (total <= 0) return std::nullopt;
  double x = std::uniform_real_distribution<double>(0, total)(rng);
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].itc.args.empty()) continue;
    last = i;
    x -= pool[i].ub_type ? w.ub : w.ok;
    if (x < 0) return i;
  }
  return last;
}

Harness::Harness(const std::vector<syntax::SourceModule>& old_modules,
                 const std::vector<syntax::SourceModule>& new_modules, const compare::PoiRelation& relation,
                 const compare::ComparisonConfig& cfg, std::optional<instrument::StackMode> stack)
    : relation_(relation), cfg_(cfg) {
  instrument::CallMode call = instrument::CallMode::Standard;
  if (cfg.mode == compare::Mode::Ait)
    call = instrument::CallMode::Ait;
  else if (cfg.needs_call_info())
    call = instrument::CallMode::Enhanced;
  instrument::StackMode st =
      stack.value_or(cfg.needs_stack() ? instrument::StackMode::Calls : instrument::StackMode::Off);

  old_plan_ = {project(relation, true), call, st};
  new_plan_ = {project(relation, false), call, st};
  old_ = instrument_program(old_modules, old_plan_);
  new_ = instrument_program(new_modules, new_plan_);

  collect_.collector = call == instrument::CallMode::Ait        ? tracer::Collector::Ait
                       : call == instrument::CallMode::Enhanced ? tracer::Collector::EnhancedCall
                                                                : tracer::Collector::Basic;
  collect_.stack = st != instrument::StackMode::Off;
}

Harness::Outcome Harness::run(const Itc& itc, std::optional<std::chrono::steady_clock::time_point> deadline) const {
  eval::Budget budget{step_budget, deadline};
  Outcome out;
  out.old_run = run_version(old_, itc, budget, collect_);
  out.new_run = run_version(new_, itc, budget, collect_);
  auto cut = [&](const compare::VersionRun& r) {
    return deadline && r.error && r.error->is_timeout() && std::chrono::steady_clock::now() >= *deadline;
  };
  out.interrupted = cut(out.old_run) || cut(out.new_run);
  if (!out.interrupted) out.findings = compare::compare_runs(out.old_run, out.new_run, relation_, cfg_);
  return out;
}

std::size_t CampaignResult::total_mismatching() const {
  std::size_t n = 0;
  for (const auto& f : functions) n += f.mismatching;
  return n;
}

CampaignResult run_campaign(const Harness& harness, const std::vector<FunctionId>& funs,
                            const CampaignLimits& limits, Rng& rng) {
  using Clock = std::chrono::steady_clock;
  constexpr std::size_t kMaxConsecutiveDuplicates = 500;
  CampaignResult result;

  for (const auto& id : funs) {
    const syntax::FunDef* f = harness.old_program().main().find_function(id.name, id.arity);
    if (!f) throw UnknownInputFunction("module " + harness.old_program().main().name + " has no function " + to_string(id));
    if (!harness.new_program().main().find_function(id.name, id.arity))
      throw UnknownInputFunction("module " + harness.new_program().main().name + " has no function " + to_string(id));

    FunctionResult fr;
    fr.function = id;
    auto start = Clock::now();
    std::optional<Clock::time_point> deadline;
    if (limits.timeout_s)
      deadline = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*limits.timeout_s));

    std::vector<PoolEntry> pool;
    std::unordered_set<std::string> seen;
    std::size_t duplicates = 0;
    std::bernoulli_distribution fresh(limits.fresh_probability);

    while (true) {
      if (limits.max_itcs && fr.generated >= *limits.max_itcs) break;
      if (deadline && Clock::now() >= *deadline) break;
      if (f->arity == 0 && fr.generated == 1) break;

      Itc itc;
      std::optional<std::size_t> parent = fresh(rng) ? std::nullopt : schedule_next(pool, rng);
      itc = parent ? mutate_itc(pool[*parent].itc, rng, f->spec) : generate_itc(*f, rng);
      std::string key = to_string(itc);
      if (!seen.insert(key).second) {
        if (++duplicates > kMaxConsecutiveDuplicates) break;
        continue;
      }
      duplicates = 0;

      Harness::Outcome out = harness.run(itc, deadline);
      if (out.interrupted) break;
      PoolEntry entry{itc, record(fr, itc, out)};
      pool.push_back(std::move(entry));
    }
    fr.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    result.functions.push_back(std::move(fr));
  }
  return result;
}

CampaignResult replay(const Harness& harness, const std::vector<Itc>& itcs) {
  CampaignResult result;
  for (const auto& itc : itcs) {
    auto fr = std::find_if(result.functions.begin(), result.functions.end(),
                           [&](const FunctionResult& f) { return f.function == itc.function; });
    if (fr == result.functions.end()) {
      result.functions.push_back(FunctionResult{itc.function, 0, 0, {}, {}, 0});
      fr = result.functions.end() - 1;
    }
    auto start = std::chrono::steady_clock::now();
    record(*fr, itc, harness.run(itc));
    fr->elapsed_s += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

}  // namespace poitest::testgen
