// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/syntax/query.hpp"

#include <algorithm>
#include <unordered_set>

namespace poitest::syntax {
namespace {

bool matches(const Expr& e, const PoiKind& kind) {
  if (kind_tag(e.kind) != kind.tag) return false;
  return kind.tag != "var" || e.text == kind.var_name;
}

}  // namespace

std::vector<int> find_expressions(const SourceModule& m, int line, const PoiKind& kind) {
  std::unordered_set<const Expr*> callee_names;
  std::vector<const Expr*> hits;
  for_each_node(m, [&](const Expr& e, bool expr_pos) {
    if (e.kind == ExprKind::Call) {
      const Expr* callee = e.children[0].get();
      if (callee->kind == ExprKind::Atom || callee->kind == ExprKind::Remote) callee_names.insert(callee);
    }
    if (callee_names.count(&e) && e.kind == ExprKind::Remote)
      for (const auto& c : e.children) callee_names.insert(c.get());
    if (!expr_pos || e.synthetic || callee_names.count(&e)) return;
    if (e.kind == ExprKind::Var && e.text.rfind(kReservedVarPrefix, 0) == 0) return;
    if (e.pos.line == line && matches(e, kind)) hits.push_back(&e);
  });
  std::stable_sort(hits.begin(), hits.end(), [](const Expr* a, const Expr* b) {
    if (a->pos.column != b->pos.column) return a->pos.column < b->pos.column;
    return a->pos.node_id < b->pos.node_id;
  });
  std::vector<int> ids;
  ids.reserve(hits.size());
  for (const Expr* e : hits) ids.push_back(e->pos.node_id);
  return ids;
}

const Expr* find_node(const SourceModule& m, int node_id) {
  const Expr* found = nullptr;
  for_each_node(m, [&](const Expr& e, bool) {
    if (!found && e.pos.node_id == node_id) found = &e;
  });
  return found;
}

}  // namespace poitest::syntax
