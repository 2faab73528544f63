// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Source-to-source instrumentation: value POIs, enhanced call POIs (callee
/// and arguments traced with add_i under a shared reference), the AIT call
/// variant, and begin/end stack tracing.
///
/// All passes rewrite bottom-up, so a POI nested inside another POI is
/// instrumented first and the outer wrapper evaluates it exactly once.

#pragma once

#include <string>
#include <vector>

#include "poitest/errors.hpp"
#include "poitest/syntax/ast.hpp"

namespace poitest::instrument {

class PoiNotFound : public Error {
 public:
  using Error::Error;
};

class PoiOccurrenceOutOfRange : public Error {
 public:
  using Error::Error;
};

class NotACall : public Error {
 public:
  using Error::Error;
};

class AlreadyInstrumented : public Error {
 public:
  using Error::Error;
};

enum class CallMode { Standard, Enhanced, Ait };
enum class StackMode { Off, Calls, Defs, Both };

std::string to_string(CallMode mode);
std::string to_string(StackMode mode);

struct InstrumentationPlan {
  std::vector<Poi> pois;
  CallMode call_mode = CallMode::Standard;
  StackMode stack_mode = StackMode::Off;
};

/// True when the POI's module field names `m` (module name, file name, stem or
/// path).
bool poi_in_module(const Poi& p, const syntax::SourceModule& m);

/// Node id of the POI's expression.
int resolve_poi(const syntax::SourceModule& m, const Poi& p);

syntax::SourceModule instrument_value_pois(const syntax::SourceModule& m, const std::vector<Poi>& pois);
syntax::SourceModule instrument_call_pois(const syntax::SourceModule& m, const std::vector<Poi>& pois);
syntax::SourceModule instrument_ait_calls(const syntax::SourceModule& m, const std::vector<Poi>& pois);
syntax::SourceModule instrument_stack_tracing(const syntax::SourceModule& m, StackMode mode);

/// POIs of the plan that belong to `m` are instrumented (call POIs with the
/// plan's call mode, other kinds as value POIs), then stack tracing is
/// applied.
syntax::SourceModule apply_plan(const syntax::SourceModule& m, const InstrumentationPlan& plan);

}  // namespace poitest::instrument
