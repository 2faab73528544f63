// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/report/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "poitest/syntax/parser.hpp"

namespace poitest::report {
namespace {

using syntax::Expr;
using syntax::ExprKind;

const std::set<std::string> kModeNames = {"nuai", "nuai_t", "nuai_r", "nuai_tr", "uai", "ait"};

bool typed(compare::Mode m) {
  return m == compare::Mode::NuaiT || m == compare::Mode::NuaiTR || m == compare::Mode::Uai ||
         m == compare::Mode::Ait;
}

bool reported(compare::Mode m) {
  return m == compare::Mode::NuaiR || m == compare::Mode::NuaiTR || m == compare::Mode::Uai ||
         m == compare::Mode::Ait;
}

bool is_mode_block(const Expr& e) {
  if (e.kind == ExprKind::Atom) return kModeNames.count(e.text) > 0;
  return e.kind == ExprKind::Call && e.children[0]->kind == ExprKind::Atom && kModeNames.count(e.children[0]->text) > 0;
}

bool is_poi_literal(const Expr& e) {
  return e.kind == ExprKind::Tuple && (e.children.size() == 3 || e.children.size() == 4) &&
         e.children[1]->kind == ExprKind::Integer;
}

class Loader {
 public:
  explicit Loader(std::string path) { out_.path = std::move(path); }

  ConfigFile run(std::string_view text) {
    syntax::Parser p(syntax::tokenize(text, out_.path), out_.path, {});
    std::vector<std::pair<std::string, syntax::ExprPtr>> defs;
    while (!p.at_end()) {
      syntax::ExprPtr e = p.expression();
      p.expect_dot();
      if (e->kind != ExprKind::Match || e->children[0]->kind != ExprKind::Atom)
        fail(*e, "expected a definition of the form name = term.");
      const std::string& name = e->children[0]->text;
      if (!names_.insert(name).second) fail(*e, "duplicate definition of " + name);
      defs.emplace_back(name, e->children[1]);
    }
    // POIs first so relations may refer to names defined later in the file.
    for (const auto& [name, e] : defs)
      if (is_poi_literal(*e)) out_.pois[name] = syntax::poi_from_literal(*e, out_.path);
    for (const auto& [name, e] : defs) {
      if (is_poi_literal(*e)) continue;
      if (is_mode_block(*e))
        out_.configs[name] = mode_block(*e);
      else if (e->kind == ExprKind::List)
        list_definition(name, *e);
      else
        fail(*e, "cannot tell what " + name + " defines");
    }
    if (out_.relations.empty()) throw ConfigError(where() + "no relations defined");
    return std::move(out_);
  }

 private:
  std::string where(int line = 0) const {
    std::string w = out_.path.empty() ? "<config>" : out_.path;
    return line > 0 ? w + ":" + std::to_string(line) + ": " : w + ": ";
  }

  [[noreturn]] void fail(const Expr& e, const std::string& msg) const { throw ConfigError(where(e.pos.line) + msg); }

  void list_definition(const std::string& name, const Expr& e) {
    if (e.children.empty() || e.tail) fail(e, name + " must be a non-empty proper list");
    const Expr& first = *e.children[0];
    if (first.kind == ExprKind::Tuple && first.children.size() == 2) {
      compare::PoiRelation rel;
      for (const auto& pair : e.children) {
        if (pair->kind != ExprKind::Tuple || pair->children.size() != 2)
          fail(*pair, "relation entries are {OldPoi, NewPoi} pairs");
        rel.emplace_back(poi_ref(*pair->children[0]), poi_ref(*pair->children[1]));
      }
      out_.relations[name] = std::move(rel);
    } else if (first.kind == ExprKind::BinOp && first.text == "/") {
      std::vector<FunctionId> funs;
      for (const auto& f : e.children) {
        if (f->kind != ExprKind::BinOp || f->text != "/" || f->children[0]->kind != ExprKind::Atom ||
            f->children[1]->kind != ExprKind::Integer)
          fail(*f, "input functions are written name/arity");
        funs.push_back(FunctionId{f->children[0]->text, static_cast<int>(f->children[1]->integer)});
      }
      out_.funs[name] = std::move(funs);
    } else {
      fail(e, "cannot tell what " + name + " defines");
    }
  }

  Poi poi_ref(const Expr& e) const {
    if (e.kind == ExprKind::Atom) {
      auto it = out_.pois.find(e.text);
      if (it == out_.pois.end()) fail(e, "undefined POI name " + e.text);
      return it->second;
    }
    if (!is_poi_literal(e)) fail(e, "expected a POI literal {Module, Line, Kind[, Occurrence]} or a POI name");
    return syntax::poi_from_literal(e, out_.path);
  }

  compare::Ubrm ubrm(const Expr& e) const {
    compare::Ubrm u;
    for (const auto& entry : e.children) {
      if (entry->kind != ExprKind::Tuple || entry->children.size() != 2 ||
          entry->children[0]->kind != ExprKind::Atom || entry->children[1]->kind != ExprKind::List)
        fail(*entry, "UBRM entries are {UbType, [Field, ...]}");
      std::vector<compare::ReportField> fields;
      for (const auto& f : entry->children[1]->children) {
        if (f->kind != ExprKind::Atom) fail(*f, "report fields are atoms (val, ca, st, his)");
        try {
          fields.push_back(compare::field_from_string(f->text));
        } catch (const ConfigError& err) {
          fail(*f, err.what());
        }
      }
      u.entries[entry->children[0]->text] = std::move(fields);
    }
    return u;
  }

  compare::ComparisonConfig mode_block(const Expr& e) const {
    const std::string& mode_name = e.kind == ExprKind::Atom ? e.text : e.children[0]->text;
    compare::Mode mode = compare::mode_from_string(mode_name);
    std::optional<std::string> tecf;
    std::optional<compare::Ubrm> u;
    for (std::size_t i = 1; e.kind == ExprKind::Call && i < e.children.size(); ++i) {
      const Expr& arg = *e.children[i];
      if (arg.kind == ExprKind::Atom) {
        if (!typed(mode) || tecf) fail(arg, "mode " + mode_name + " takes no TECF here");
        try {
          compare::tecf_lookup(arg.text);
        } catch (const ConfigError& err) {
          fail(arg, err.what());
        }
        tecf = arg.text;
      } else if (arg.kind == ExprKind::List) {
        if (!reported(mode) || u) fail(arg, "mode " + mode_name + " takes no UBRM here");
        u = ubrm(arg);
      } else {
        fail(arg, "mode arguments are a TECF name or a UBRM list");
      }
    }
    return compare::build_mode_config(mode, tecf, u);
  }

  ConfigFile out_;
  std::set<std::string> names_;
};

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const std::string& what,
                                        const std::string& path) {
  auto it = m.find(name);
  if (it == m.end()) throw ConfigError((path.empty() ? "<config>" : path) + ": no " + what + " named " + name);
  return it->second;
}

}  // namespace

const compare::PoiRelation& ConfigFile::relation(const std::string& name) const {
  return lookup(relations, name, "relation", path);
}

const std::vector<FunctionId>& ConfigFile::functions(const std::string& name) const {
  return lookup(funs, name, "input-function list", path);
}

const compare::ComparisonConfig& ConfigFile::config(const std::string& name) const {
  return lookup(configs, name, "mode block", path);
}

ConfigFile parse_config(std::string_view text, const std::string& path) { return Loader(path).run(text); }

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

}  // namespace poitest::report
