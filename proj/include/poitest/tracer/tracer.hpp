// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Collectors turning the ordered event log of one execution into a trace.
/// All collectors are pure functions of the log.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "poitest/eval/trace_event.hpp"
#include "poitest/eval/value.hpp"

namespace poitest::tracer {

using eval::Value;

struct CallArgs {
  Value callee;
  std::vector<Value> args;
};

bool operator==(const CallArgs& a, const CallArgs& b);

struct TraceElement {
  Poi poi;
  Value value;
  std::optional<CallArgs> ca;           // call POIs in enhanced mode
  std::optional<std::vector<Frame>> st;  // innermost frame first
};

/// Callee and arguments of one call-POI execution, traced on their own under
/// the AIT collector.
struct CalleeArgs {
  Poi poi;
  Value callee;
  std::vector<Value> args;
};

using AitElement = std::variant<TraceElement, CalleeArgs>;

const Poi& poi_of(const AitElement& e);
std::string to_string(const TraceElement& e);
std::string to_string(const CalleeArgs& e);
std::string to_string(const AitElement& e);

enum class Collector { Basic, EnhancedCall, Ait };

struct CollectOptions {
  Collector collector = Collector::Basic;
  bool stack = false;
};

struct Trace {
  std::vector<AitElement> elements;
  /// The execution stopped early (timeout or resource limit).
  bool partial = false;
  /// Non-fatal observations, e.g. calls whose result never arrived.
  std::vector<std::string> diagnostics;
};

/// Dynamic frame stack fed by begin/end events.
class FrameStack {
 public:
  void begin(const Begin& b);
  /// Pops the frame opened with `ref`. When it is not on top, every frame
  /// above it is discarded as well (an error unwound them). Throws
  /// ProtocolError when no open frame has that ref.
  void end(const Value& ref);

  /// Visible frames, innermost first; shadowed call-site frames are skipped
  /// and runs of identical frames are folded.
  std::vector<Frame> snapshot() const;
  std::size_t depth() const { return entries_.size(); }

  /// Any other event between two begins keeps the second from shadowing the
  /// first.
  void other_event() { last_was_call_site_begin_ = false; }

 private:
  struct Entry {
    Value ref;
    Frame frame;
    FrameOrigin origin;
    std::optional<FunctionId> callee;
    bool shadowed = false;
  };
  std::vector<Entry> entries_;
  bool last_was_call_site_begin_ = false;
};

Trace collect(const std::vector<TraceEvent>& events, const CollectOptions& options);

std::vector<TraceElement> collect_basic(const std::vector<TraceEvent>& events);
std::vector<TraceElement> collect_enhanced_call(const std::vector<TraceEvent>& events);
/// Enhanced-call merging plus an `st` snapshot on every element.
std::vector<TraceElement> collect_stack(const std::vector<TraceEvent>& events);
std::vector<AitElement> collect_ait(const std::vector<TraceEvent>& events);

/// Stable partition by POI.
std::map<Poi, std::vector<AitElement>> split_per_poi(const std::vector<AitElement>& trace);
std::map<Poi, std::vector<TraceElement>> split_per_poi(const std::vector<TraceElement>& trace);

}  // namespace poitest::tracer
