// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Trace comparison: value extractors (VEF), trace-element comparison
/// functions (TECF), report mappings (UBRM), the six comparison modes, and the
/// general comparison walk.
///
/// Comparisons run over AitElement streams. A CalleeArgs element is compared
/// like any other element; its extracted value is `{callee_args,[Callee|Args]}`.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poitest/errors.hpp"
#include "poitest/eval/runtime_error.hpp"
#include "poitest/tracer/tracer.hpp"

namespace poitest::compare {

using eval::Value;
using tracer::AitElement;

class UnknownVef : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownTecf : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class MissingAiKey : public Error {
 public:
  using Error::Error;
};

enum class Mode { Nuai, NuaiT, NuaiR, NuaiTR, Uai, Ait };
enum class Granularity { Whole, PerPoi };
enum class ReportField { Val, Ca, St, His };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);
std::string to_string(ReportField field);
ReportField field_from_string(const std::string& name);

using Vef = std::function<Value(const AitElement&)>;
/// nullopt means the pair behaves as expected; otherwise the UB type.
using Tecf = std::function<std::optional<std::string>(const Vef&, const AitElement& old_te,
                                                      const AitElement& new_te)>;

/// Registry names: value_only, value_and_ai, value_and_stack, whole_te.
Vef vef_lookup(const std::string& name);
/// Registry names: equality, value_then_args, value_then_stack,
/// performance_compare.
Tecf tecf_lookup(const std::string& name);

/// Arguments of a call element (callee excluded).
const std::vector<Value>& get_te_args(const AitElement& te);
/// Callee and arguments as one list.
Value get_te_call(const AitElement& te);
const std::vector<Frame>& get_te_stack(const AitElement& te);
Value frame_value(const Frame& f);

/// UB type to report fields, with a fallback for types not listed.
struct Ubrm {
  std::map<std::string, std::vector<ReportField>> entries;
  std::vector<ReportField> fallback = {ReportField::Val};

  const std::vector<ReportField>& fields_for(const std::string& ub_type) const;
  bool shows(const std::string& ub_type, ReportField f) const;
};

struct ComparisonConfig {
  Mode mode = Mode::Nuai;
  std::string vef_name = "value_only";
  std::string tecf_name = "equality";
  Vef vef;
  Tecf tecf;
  Ubrm ubrm;
  Granularity granularity = Granularity::PerPoi;

  /// Whether traces must carry call information / stacks for this config.
  bool needs_call_info() const;
  bool needs_stack() const;
};

/// `tecf` and `ubrm` are honoured by the modes that take them (T and R
/// variants, uai and ait) and ignored otherwise.
ComparisonConfig build_mode_config(Mode mode, const std::optional<std::string>& tecf = std::nullopt,
                                   const std::optional<Ubrm>& ubrm = std::nullopt);

struct UbFinding {
  std::string ub_type;
  Poi old_poi;
  Poi new_poi;
  std::optional<AitElement> old_te;
  std::optional<AitElement> new_te;
  /// Pairs that compared equal before the divergence, in order.
  std::vector<std::pair<AitElement, AitElement>> history;
  std::optional<eval::RuntimeError> old_error;
  std::optional<eval::RuntimeError> new_error;

  /// One-line explanation, e.g. "value 3 was expected but value 2 was
  /// generated".
  std::string describe() const;
};

inline constexpr const char* kTraceLengthMismatch = "trace_length_mismatch";
inline constexpr const char* kTraceTruncated = "trace_truncated";
inline constexpr const char* kUnexpectedPoi = "unexpected_poi";

std::optional<UbFinding> cf_general(const std::vector<AitElement>& to, const std::vector<AitElement>& tn,
                                    const Vef& vef, const Tecf& tecf);

using PoiRelation = std::vector<std::pair<Poi, Poi>>;

std::vector<UbFinding> compare_itc(const std::vector<AitElement>& old_trace,
                                   const std::vector<AitElement>& new_trace, const PoiRelation& relation,
                                   const ComparisonConfig& cfg);

/// Result of running one ITC on one version.
struct VersionRun {
  tracer::Trace trace;
  std::optional<eval::RuntimeError> error;
};

/// Adds error and truncation handling on top of compare_itc: differing error
/// classes yield old_error / new_error / both_error; a partial trace against
/// a complete one yields trace_truncated unless an earlier divergence exists.
std::vector<UbFinding> compare_runs(const VersionRun& old_run, const VersionRun& new_run,
                                    const PoiRelation& relation, const ComparisonConfig& cfg);

}  // namespace poitest::compare
