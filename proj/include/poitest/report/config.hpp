// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Declarative test configuration files.
///
/// A file is a sequence of `name = term.` definitions, `%` comments allowed:
///
///     old1 = {'merge_ok.mf', 16, call}.
///     new1 = {'merge.mf', 16, call, 1}.
///     rel1 = [{old1, new1}].
///     funs = [mergesortcomp/1].
///     config = nuai_r([{different_value, [val, st]}]).
///
/// The shape of the term decides what is defined: a POI literal, a relation
/// (list of POI pairs, each side a literal or a POI name), an input-function
/// list, or a mode block. A mode block is a mode atom, optionally applied to
/// a TECF name and/or a UBRM list.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "poitest/compare/compare.hpp"

namespace poitest::report {

struct ConfigFile {
  std::string path;
  std::map<std::string, Poi> pois;
  std::map<std::string, compare::PoiRelation> relations;
  std::map<std::string, std::vector<FunctionId>> funs;
  std::map<std::string, compare::ComparisonConfig> configs;

  /// Each throws ConfigError naming the file when `name` is not defined with
  /// the requested shape.
  const compare::PoiRelation& relation(const std::string& name) const;
  const std::vector<FunctionId>& functions(const std::string& name) const;
  const compare::ComparisonConfig& config(const std::string& name) const;
};

/// Throws SyntaxError for malformed terms and ConfigError for dangling names,
/// unknown modes/TECFs, invalid report fields, or a file without relations.
ConfigFile parse_config(std::string_view text, const std::string& path = {});
ConfigFile load_config(const std::filesystem::path& path);

}  // namespace poitest::report
