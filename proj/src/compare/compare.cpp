// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/compare/compare.hpp"

#include <algorithm>

namespace poitest::compare {

using tracer::CalleeArgs;
using tracer::TraceElement;

namespace {

const TraceElement* as_te(const AitElement& e) { return std::get_if<TraceElement>(&e); }
const CalleeArgs* as_ca(const AitElement& e) { return std::get_if<CalleeArgs>(&e); }

Value callee_args_value(const CalleeArgs& c) {
  return Value::tuple({Value::atom("callee_args"), Value::cons(c.callee, Value::list(c.args))});
}

Value plain_value(const AitElement& e) {
  if (const auto* c = as_ca(e)) return callee_args_value(*c);
  return std::get<TraceElement>(e).value;
}

Value stack_value(const std::vector<Frame>& st) {
  std::vector<Value> frames;
  for (const auto& f : st) frames.push_back(frame_value(f));
  return Value::list(frames);
}

Value ai_value(const AitElement& e) {
  std::vector<Value> entries;
  if (const auto* te = as_te(e)) {
    if (te->ca)
      entries.push_back(Value::tuple({Value::atom("ca"),
                                      Value::tuple({te->ca->callee, Value::list(te->ca->args)})}));
    if (te->st) entries.push_back(Value::tuple({Value::atom("st"), stack_value(*te->st)}));
  }
  return Value::list(entries);
}

Value poi_value(const Poi& p) {
  return Value::tuple({Value::atom(p.module), Value::integer(p.line), Value::atom(to_string(p.kind)),
                       Value::integer(p.occurrence)});
}

std::optional<std::string> equality(const Vef& vef, const AitElement& o, const AitElement& n) {
  if (vef(o) == vef(n)) return std::nullopt;
  if (as_ca(o) && as_ca(n)) return std::string("different_callee_args");
  return std::string("different_value");
}

const std::vector<Value>* args_or_null(const AitElement& e) {
  if (const auto* c = as_ca(e)) return &c->args;
  const auto& te = std::get<TraceElement>(e);
  return te.ca ? &te.ca->args : nullptr;
}

const std::vector<Frame>* stack_or_null(const AitElement& e) {
  const auto* te = as_te(e);
  return te && te->st ? &*te->st : nullptr;
}

std::optional<std::string> value_then_args(const Vef& vef, const AitElement& o, const AitElement& n) {
  if (vef(o) == vef(n)) return std::nullopt;
  const auto* ao = args_or_null(o);
  const auto* an = args_or_null(n);
  if (!ao || !an) return std::string("different_value");
  return std::string(*ao == *an ? "different_value_same_args" : "different_value_different_args");
}

std::optional<std::string> value_then_stack(const Vef& vef, const AitElement& o, const AitElement& n) {
  if (vef(o) == vef(n)) return std::nullopt;
  const auto* so = stack_or_null(o);
  const auto* sn = stack_or_null(n);
  if (!so || !sn) return std::string("different_value");
  return std::string(*so == *sn ? "diff_value_same_stack_trace" : "diff_value_diff_stack_trace");
}

std::optional<std::string> performance_compare(const Vef& vef, const AitElement& o, const AitElement& n) {
  int c = eval::compare(vef(n), vef(o));
  if (c > 0) return std::nullopt;
  return std::string(c == 0 ? "same" : "downgrade");
}

bool mentions(const Ubrm& u, ReportField f) {
  if (std::find(u.fallback.begin(), u.fallback.end(), f) != u.fallback.end()) return true;
  for (const auto& [_, fields] : u.entries)
    if (std::find(fields.begin(), fields.end(), f) != fields.end()) return true;
  return false;
}

using PoiCheck = std::function<bool(const Poi& old_poi, const Poi& new_poi)>;

std::optional<UbFinding> walk(const std::vector<AitElement>& to, const std::vector<AitElement>& tn,
                              const Vef& vef, const Tecf& tecf, const PoiCheck& same_poi, bool prefix_only) {
  std::vector<std::pair<AitElement, AitElement>> his;
  std::size_t n = std::min(to.size(), tn.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<std::string> ub;
    if (same_poi && !same_poi(tracer::poi_of(to[i]), tracer::poi_of(tn[i]))) ub = kUnexpectedPoi;
    else ub = tecf(vef, to[i], tn[i]);
    if (ub) {
      UbFinding f;
      f.ub_type = *ub;
      f.old_poi = tracer::poi_of(to[i]);
      f.new_poi = tracer::poi_of(tn[i]);
      f.old_te = to[i];
      f.new_te = tn[i];
      f.history = std::move(his);
      return f;
    }
    his.emplace_back(to[i], tn[i]);
  }
  if (to.size() == tn.size() || prefix_only) return std::nullopt;
  UbFinding f;
  f.ub_type = kTraceLengthMismatch;
  if (to.size() > n) {
    f.old_te = to[n];
    f.old_poi = tracer::poi_of(to[n]);
  } else {
    f.new_te = tn[n];
    f.new_poi = tracer::poi_of(tn[n]);
  }
  f.history = std::move(his);
  return f;
}

std::vector<AitElement> of_poi(const std::vector<AitElement>& trace, const Poi& p) {
  std::vector<AitElement> out;
  for (const auto& e : trace)
    if (tracer::poi_of(e) == p) out.push_back(e);
  return out;
}

std::vector<UbFinding> compare_impl(const std::vector<AitElement>& old_trace,
                                    const std::vector<AitElement>& new_trace, const PoiRelation& relation,
                                    const ComparisonConfig& cfg, bool prefix_only) {
  std::vector<UbFinding> out;
  if (cfg.granularity == Granularity::PerPoi) {
    for (const auto& [po, pn] : relation) {
      auto f = walk(of_poi(old_trace, po), of_poi(new_trace, pn), cfg.vef, cfg.tecf, {}, prefix_only);
      if (f) {
        f->old_poi = po;
        f->new_poi = pn;
        out.push_back(std::move(*f));
      }
    }
    return out;
  }
  auto related = [&](const Poi& po, const Poi& pn) {
    return std::find(relation.begin(), relation.end(), std::make_pair(po, pn)) != relation.end();
  };
  auto keep = [&](const std::vector<AitElement>& t, bool old_side) {
    std::vector<AitElement> kept;
    for (const auto& e : t) {
      const Poi& p = tracer::poi_of(e);
      bool in = std::any_of(relation.begin(), relation.end(),
                            [&](const auto& r) { return (old_side ? r.first : r.second) == p; });
      if (in) kept.push_back(e);
    }
    return kept;
  };
  auto f = walk(keep(old_trace, true), keep(new_trace, false), cfg.vef, cfg.tecf, related, prefix_only);
  if (f) out.push_back(std::move(*f));
  return out;
}

std::string value_text(const std::optional<AitElement>& e) {
  return e ? eval::to_string(plain_value(*e)) : std::string("nothing");
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Nuai: return "nuai";
    case Mode::NuaiT: return "nuai_t";
    case Mode::NuaiR: return "nuai_r";
    case Mode::NuaiTR: return "nuai_tr";
    case Mode::Uai: return "uai";
    case Mode::Ait: return "ait";
  }
  return "?";
}

Mode mode_from_string(const std::string& name) {
  for (auto m : {Mode::Nuai, Mode::NuaiT, Mode::NuaiR, Mode::NuaiTR, Mode::Uai, Mode::Ait})
    if (to_string(m) == name) return m;
  throw ConfigError("unknown comparison mode '" + name + "'");
}

std::string to_string(ReportField field) {
  switch (field) {
    case ReportField::Val: return "val";
    case ReportField::Ca: return "ca";
    case ReportField::St: return "st";
    case ReportField::His: return "his";
  }
  return "?";
}

ReportField field_from_string(const std::string& name) {
  for (auto f : {ReportField::Val, ReportField::Ca, ReportField::St, ReportField::His})
    if (to_string(f) == name) return f;
  throw ConfigError("invalid report field '" + name + "' (expected val, ca, st or his)");
}

Vef vef_lookup(const std::string& name) {
  if (name == "value_only") return plain_value;
  if (name == "value_and_ai") return [](const AitElement& e) { return Value::tuple({plain_value(e), ai_value(e)}); };
  if (name == "value_and_stack")
    return [](const AitElement& e) {
      const auto* st = stack_or_null(e);
      return Value::tuple({plain_value(e), st ? stack_value(*st) : Value::nil()});
    };
  if (name == "whole_te")
    return [](const AitElement& e) {
      return Value::tuple({poi_value(tracer::poi_of(e)), plain_value(e), ai_value(e)});
    };
  throw UnknownVef("unknown value extractor '" + name + "'");
}

Tecf tecf_lookup(const std::string& name) {
  if (name == "equality") return equality;
  if (name == "value_then_args") return value_then_args;
  if (name == "value_then_stack") return value_then_stack;
  if (name == "performance_compare") return performance_compare;
  throw UnknownTecf("unknown trace-element comparison function '" + name + "'");
}

const std::vector<Value>& get_te_args(const AitElement& te) {
  const auto* a = args_or_null(te);
  if (!a) throw MissingAiKey("trace element of " + to_string(tracer::poi_of(te)) + " has no ca information");
  return *a;
}

Value get_te_call(const AitElement& te) {
  if (const auto* c = as_ca(te)) return Value::cons(c->callee, Value::list(c->args));
  const auto& t = std::get<TraceElement>(te);
  if (!t.ca) throw MissingAiKey("trace element of " + to_string(t.poi) + " has no ca information");
  return Value::cons(t.ca->callee, Value::list(t.ca->args));
}

const std::vector<Frame>& get_te_stack(const AitElement& te) {
  const auto* s = stack_or_null(te);
  if (!s) throw MissingAiKey("trace element of " + to_string(tracer::poi_of(te)) + " has no st information");
  return *s;
}

Value frame_value(const Frame& f) {
  return Value::tuple({Value::atom(f.module), Value::atom(f.function), Value::integer(f.arity),
                       Value::tuple({Value::atom("line"), Value::integer(f.line)})});
}

const std::vector<ReportField>& Ubrm::fields_for(const std::string& ub_type) const {
  auto it = entries.find(ub_type);
  return it == entries.end() ? fallback : it->second;
}

bool Ubrm::shows(const std::string& ub_type, ReportField f) const {
  const auto& fs = fields_for(ub_type);
  return std::find(fs.begin(), fs.end(), f) != fs.end();
}

bool ComparisonConfig::needs_call_info() const {
  return mode == Mode::Uai || mode == Mode::Ait || tecf_name == "value_then_args" || mentions(ubrm, ReportField::Ca);
}

bool ComparisonConfig::needs_stack() const {
  return tecf_name == "value_then_stack" || vef_name == "value_and_stack" || mentions(ubrm, ReportField::St);
}

ComparisonConfig build_mode_config(Mode mode, const std::optional<std::string>& tecf,
                                   const std::optional<Ubrm>& ubrm) {
  ComparisonConfig c;
  c.mode = mode;
  bool typed = mode == Mode::NuaiT || mode == Mode::NuaiTR || mode == Mode::Uai || mode == Mode::Ait;
  bool reported = mode == Mode::NuaiR || mode == Mode::NuaiTR || mode == Mode::Uai || mode == Mode::Ait;
  if (typed && tecf) c.tecf_name = *tecf;
  if (mode == Mode::Uai) {
    c.vef_name = "value_and_ai";
    c.ubrm.fallback = {ReportField::Val, ReportField::Ca, ReportField::St};
  } else if (mode == Mode::Ait) {
    c.ubrm.fallback = {ReportField::Val, ReportField::Ca};
  }
  if (reported && ubrm) c.ubrm = *ubrm;
  c.vef = vef_lookup(c.vef_name);
  c.tecf = tecf_lookup(c.tecf_name);
  return c;
}

std::string UbFinding::describe() const {
  if (ub_type == kUnexpectedPoi)
    return "a trace from POI " + to_string(old_poi) + " was expected but a trace from POI " + to_string(new_poi) +
           " was generated";
  if (ub_type == kTraceLengthMismatch)
    return old_te ? "the old trace continues with " + value_text(old_te) + " but the new trace ended"
                  : "the new trace continues with " + value_text(new_te) + " but the old trace ended";
  if (ub_type == kTraceTruncated) return "one execution stopped before completing its trace";
  if (old_error || new_error) {
    auto cls = [](const std::optional<eval::RuntimeError>& e) {
      return e ? "raised " + e->error_class() : std::string("returned normally");
    };
    return "old version " + cls(old_error) + ", new version " + cls(new_error);
  }
  return "value " + value_text(old_te) + " was expected but value " + value_text(new_te) + " was generated";
}

std::optional<UbFinding> cf_general(const std::vector<AitElement>& to, const std::vector<AitElement>& tn,
                                    const Vef& vef, const Tecf& tecf) {
  return walk(to, tn, vef, tecf, {}, false);
}

std::vector<UbFinding> compare_itc(const std::vector<AitElement>& old_trace,
                                   const std::vector<AitElement>& new_trace, const PoiRelation& relation,
                                   const ComparisonConfig& cfg) {
  return compare_impl(old_trace, new_trace, relation, cfg, false);
}

std::vector<UbFinding> compare_runs(const VersionRun& old_run, const VersionRun& new_run,
                                    const PoiRelation& relation, const ComparisonConfig& cfg) {
  bool old_partial = old_run.trace.partial;
  bool new_partial = new_run.trace.partial;
  if (old_partial || new_partial) {
    auto found = compare_impl(old_run.trace.elements, new_run.trace.elements, relation, cfg, true);
    if (!found.empty() || old_partial == new_partial) return found;
    UbFinding f;
    f.ub_type = kTraceTruncated;
    if (!relation.empty()) {
      f.old_poi = relation.front().first;
      f.new_poi = relation.front().second;
    }
    f.old_error = old_run.error;
    f.new_error = new_run.error;
    return {f};
  }
  auto cls = [](const std::optional<eval::RuntimeError>& e) { return e ? e->error_class() : std::string(); };
  std::string co = cls(old_run.error);
  std::string cn = cls(new_run.error);
  if (co != cn) {
    UbFinding f;
    f.ub_type = co.empty() ? "new_error" : cn.empty() ? "old_error" : "both_error";
    if (!relation.empty()) {
      f.old_poi = relation.front().first;
      f.new_poi = relation.front().second;
    }
    f.old_error = old_run.error;
    f.new_error = new_run.error;
    return {f};
  }
  return compare_itc(old_run.trace.elements, new_run.trace.elements, relation, cfg);
}

}  // namespace poitest::compare
