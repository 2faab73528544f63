// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "poitest/eval/value.hpp"
#include "poitest/syntax/poi.hpp"

namespace poitest {

/// Callee or argument of a traced call, grouped by `ref`.
struct AddI {
  Poi poi;
  eval::Value ref;
  eval::Value value;
};

/// Result of a traced call; closes the AddI group with the same ref.
struct AddRef {
  Poi poi;
  eval::Value ref;
  eval::Value value;
};

struct Add {
  Poi poi;
  eval::Value value;
};

struct Begin {
  eval::Value ref;
  Frame frame;
  FrameOrigin origin = FrameOrigin::CallSite;
  /// Statically known callee of a call-site frame.
  std::optional<FunctionId> callee;
};

struct End {
  eval::Value ref;
};

using TraceEvent = std::variant<AddI, AddRef, Add, Begin, End>;

/// One line of the trace dump format, e.g. `ADD_I {m,3,call,1} #Ref<0.1> 5`.
std::string to_string(const TraceEvent& event);

}  // namespace poitest
