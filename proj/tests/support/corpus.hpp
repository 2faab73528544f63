// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "poitest/syntax/parser.hpp"
#include "poitest/syntax/query.hpp"

namespace testing_support {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path corpus_path(const std::string& file) {
  return std::filesystem::path(POITEST_CORPUS_DIR) / file;
}

inline poitest::syntax::SourceModule corpus_module(const std::string& file) {
  auto path = corpus_path(file);
  return poitest::syntax::parse_module(slurp(path), path.string());
}

/// 1-based number of the first line of `file` containing `needle`, or -1.
inline int line_of(const std::string& file, const std::string& needle) {
  std::istringstream in(slurp(corpus_path(file)));
  std::string line;
  for (int n = 1; std::getline(in, line); ++n)
    if (line.find(needle) != std::string::npos) return n;
  return -1;
}

/// Every `.mf` file of the corpus, sorted by name.
inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(POITEST_CORPUS_DIR))
    if (e.path().extension() == ".mf") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

/// One POI per expression of `m` that POI resolution can select, written
/// against `file`.
inline std::vector<poitest::Poi> all_pois(const poitest::syntax::SourceModule& m, const std::string& file) {
  using poitest::syntax::ExprKind;
  std::vector<poitest::Poi> out;
  poitest::syntax::for_each_node(m, [&](const poitest::syntax::Expr& e, bool expr_pos) {
    if (!expr_pos || e.synthetic || e.kind == ExprKind::Remote || e.kind == ExprKind::TraceEmit) return;
    auto kind = e.kind == ExprKind::Var ? poitest::PoiKind::var(e.text)
                                        : poitest::PoiKind::of(poitest::syntax::kind_tag(e.kind));
    auto ids = poitest::syntax::find_expressions(m, e.pos.line, kind);
    auto it = std::find(ids.begin(), ids.end(), e.pos.node_id);
    if (it == ids.end()) return;
    out.push_back(poitest::Poi{file, e.pos.line, kind, static_cast<int>(it - ids.begin()) + 1});
  });
  return out;
}

}  // namespace testing_support
