// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/tracer/tracer.hpp"

#include <algorithm>

#include "poitest/errors.hpp"

namespace poitest::tracer {

bool operator==(const CallArgs& a, const CallArgs& b) { return a.callee == b.callee && a.args == b.args; }

const Poi& poi_of(const AitElement& e) {
  return std::visit([](const auto& x) -> const Poi& { return x.poi; }, e);
}

namespace {

std::string values(const std::vector<Value>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + eval::to_string(vs[i]);
  return out + "]";
}

}  // namespace

std::string to_string(const TraceElement& e) {
  std::string out = "{" + to_string(e.poi) + "," + eval::to_string(e.value);
  if (e.ca) out += ",ca=" + eval::to_string(e.ca->callee) + values(e.ca->args);
  if (e.st) {
    out += ",st=[";
    for (std::size_t i = 0; i < e.st->size(); ++i) out += (i ? "," : "") + to_string((*e.st)[i]);
    out += "]";
  }
  return out + "}";
}

std::string to_string(const CalleeArgs& e) {
  return "{" + to_string(e.poi) + ",{callee_args," + eval::to_string(e.callee) + "," + values(e.args) + "}}";
}

std::string to_string(const AitElement& e) {
  return std::visit([](const auto& x) { return to_string(x); }, e);
}

void FrameStack::begin(const Begin& b) {
  bool shadow = false;
  if (b.origin == FrameOrigin::Definition && last_was_call_site_begin_ && !entries_.empty()) {
    const Entry& top = entries_.back();
    shadow = !top.callee || *top.callee == FunctionId{b.frame.function, b.frame.arity};
  }
  if (shadow) entries_.back().shadowed = true;
  entries_.push_back(Entry{b.ref, b.frame, b.origin, b.callee, false});
  last_was_call_site_begin_ = b.origin == FrameOrigin::CallSite;
}

void FrameStack::end(const Value& ref) {
  last_was_call_site_begin_ = false;
  auto it = std::find_if(entries_.rbegin(), entries_.rend(), [&](const Entry& e) { return e.ref == ref; });
  if (it == entries_.rend()) throw ProtocolError("end event for " + eval::to_string(ref) + " without open begin");
  entries_.erase(std::prev(it.base()), entries_.end());
}

std::vector<Frame> FrameStack::snapshot() const {
  std::vector<Frame> out;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->shadowed) continue;
    if (!out.empty() && out.back() == it->frame) continue;
    out.push_back(it->frame);
  }
  return out;
}

namespace {

struct Group {
  Value ref;
  Poi poi;
  std::vector<Value> values;
};

class Collecting {
 public:
  explicit Collecting(const CollectOptions& o) : options_(o) {}

  Trace run(const std::vector<TraceEvent>& events) {
    for (const auto& e : events) std::visit([&](const auto& x) { on(x); }, e);
    if (options_.collector == Collector::Ait) {
      flush_ait();
    } else if (!groups_.empty()) {
      for (const auto& g : groups_)
        trace_.diagnostics.push_back("incomplete call at " + to_string(g.poi) + ": result never traced");
    }
    return std::move(trace_);
  }

 private:
  void on(const Begin& b) {
    if (options_.stack) stack_.begin(b);
  }

  void on(const End& e) {
    if (options_.stack) stack_.end(e.ref);
  }

  void on(const AddI& a) {
    stack_.other_event();
    if (options_.collector == Collector::Basic)
      throw ProtocolError("add_i event for " + to_string(a.poi) + " under the basic collector");
    if (options_.collector == Collector::Ait && !groups_.empty() && !(groups_.back().ref == a.ref)) flush_ait();
    if (groups_.empty() || !(groups_.back().ref == a.ref)) groups_.push_back(Group{a.ref, a.poi, {}});
    groups_.back().values.push_back(a.value);
  }

  void on(const AddRef& a) {
    stack_.other_event();
    if (options_.collector != Collector::EnhancedCall)
      throw ProtocolError("add event with reference for " + to_string(a.poi) + " outside enhanced collection");
    auto it = std::find_if(groups_.rbegin(), groups_.rend(), [&](const Group& g) { return g.ref == a.ref; });
    if (it == groups_.rend())
      throw ProtocolError("result of " + to_string(a.poi) + " without traced callee and arguments");
    Group g = std::move(*it);
    groups_.erase(std::prev(it.base()), groups_.end());
    CallArgs ca{g.values.front(), std::vector<Value>(g.values.begin() + 1, g.values.end())};
    push(TraceElement{a.poi, a.value, std::move(ca), std::nullopt});
  }

  void on(const Add& a) {
    stack_.other_event();
    if (options_.collector == Collector::Ait) flush_ait();
    push(TraceElement{a.poi, a.value, std::nullopt, std::nullopt});
  }

  void push(TraceElement te) {
    if (options_.stack) te.st = stack_.snapshot();
    trace_.elements.push_back(std::move(te));
  }

  void flush_ait() {
    for (auto& g : groups_)
      trace_.elements.push_back(CalleeArgs{g.poi, g.values.front(),
                                           std::vector<Value>(g.values.begin() + 1, g.values.end())});
    groups_.clear();
  }

  CollectOptions options_;
  FrameStack stack_;
  std::vector<Group> groups_;
  Trace trace_;
};

std::vector<TraceElement> elements_only(Trace t) {
  std::vector<TraceElement> out;
  for (auto& e : t.elements) out.push_back(std::get<TraceElement>(std::move(e)));
  return out;
}

}  // namespace

Trace collect(const std::vector<TraceEvent>& events, const CollectOptions& options) {
  return Collecting(options).run(events);
}

std::vector<TraceElement> collect_basic(const std::vector<TraceEvent>& events) {
  return elements_only(collect(events, {Collector::Basic, false}));
}

std::vector<TraceElement> collect_enhanced_call(const std::vector<TraceEvent>& events) {
  return elements_only(collect(events, {Collector::EnhancedCall, false}));
}

std::vector<TraceElement> collect_stack(const std::vector<TraceEvent>& events) {
  return elements_only(collect(events, {Collector::EnhancedCall, true}));
}

std::vector<AitElement> collect_ait(const std::vector<TraceEvent>& events) {
  return collect(events, {Collector::Ait, false}).elements;
}

std::map<Poi, std::vector<AitElement>> split_per_poi(const std::vector<AitElement>& trace) {
  std::map<Poi, std::vector<AitElement>> out;
  for (const auto& e : trace) out[poi_of(e)].push_back(e);
  return out;
}

std::map<Poi, std::vector<TraceElement>> split_per_poi(const std::vector<TraceElement>& trace) {
  std::map<Poi, std::vector<TraceElement>> out;
  for (const auto& e : trace) out[e.poi].push_back(e);
  return out;
}

}  // namespace poitest::tracer
