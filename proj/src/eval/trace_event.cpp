// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/eval/trace_event.hpp"

namespace poitest {

std::string to_string(const TraceEvent& event) {
  using eval::to_string;
  struct Render {
    std::string operator()(const AddI& e) const {
      return "ADD_I " + to_string(e.poi) + " " + to_string(e.ref) + " " + to_string(e.value);
    }
    std::string operator()(const AddRef& e) const {
      return "ADD " + to_string(e.poi) + " " + to_string(e.ref) + " " + to_string(e.value);
    }
    std::string operator()(const Add& e) const { return "ADD " + to_string(e.poi) + " " + to_string(e.value); }
    std::string operator()(const Begin& e) const { return "BEGIN " + to_string(e.ref) + " " + to_string(e.frame); }
    std::string operator()(const End& e) const { return "END " + to_string(e.ref); }
  };
  return std::visit(Render{}, event);
}

}  // namespace poitest
