// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/report/report.hpp"

#include <cstdio>
#include <sstream>

namespace poitest::report {
namespace {

using compare::ReportField;
using eval::Value;
using tracer::AitElement;
using tracer::CalleeArgs;
using tracer::TraceElement;

constexpr const char* kRule = "----------------------------";
constexpr const char* kDashes = "- - - - - - - - - - - - - -";

std::optional<tracer::CallArgs> call_info(const AitElement& e) {
  if (const auto* t = std::get_if<TraceElement>(&e)) return t->ca;
  const auto& c = std::get<CalleeArgs>(e);
  return tracer::CallArgs{c.callee, c.args};
}

void side(std::ostringstream& out, const compare::UbFinding& f, bool old_side, const compare::Ubrm& ubrm) {
  const Poi& poi = old_side ? f.old_poi : f.new_poi;
  const auto& te = old_side ? f.old_te : f.new_te;
  const auto& err = old_side ? f.old_error : f.new_error;
  auto shows = [&](ReportField field) { return ubrm.shows(f.ub_type, field); };

  out << "POI: " << to_string(poi) << '\n';
  if (shows(ReportField::Val)) {
    std::vector<Value> values;
    for (const auto& [o, n] : f.history)
      if (const auto* t = std::get_if<TraceElement>(old_side ? &o : &n); t && t->poi == poi) values.push_back(t->value);
    if (te)
      if (const auto* t = std::get_if<TraceElement>(&*te)) values.push_back(t->value);
    out << "  Trace:\n    " << eval::to_string(Value::list(values)) << '\n';
  }
  if (shows(ReportField::Ca) && te) {
    if (auto ca = call_info(*te)) {
      out << "  Call POI Info:\n";
      out << "    Callee: " << eval::to_string(ca->callee) << '\n';
      out << "    Args: " << eval::to_string(Value::list(ca->args)) << '\n';
    }
  }
  if (shows(ReportField::St) && te) {
    if (const auto* t = std::get_if<TraceElement>(&*te); t && t->st) {
      out << "  Stack\n";
      for (const auto& fr : *t->st) out << "    " << eval::to_string(compare::frame_value(fr)) << '\n';
    }
  }
  if (shows(ReportField::His) && !f.history.empty()) {
    out << "  History:\n";
    for (const auto& [o, n] : f.history) out << "    " << tracer::to_string(old_side ? o : n) << '\n';
  }
  if (err) out << "  Error: " << err->describe() << '\n';
}

}  // namespace

std::string percent(std::size_t part, std::size_t whole) {
  double p = whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", p);
  return buf;
}

std::string render_report(const testgen::CampaignResult& result, const compare::Ubrm& ubrm) {
  std::ostringstream out;
  for (const auto& fr : result.functions) {
    out << "Function: " << to_string(fr.function) << '\n' << kRule << '\n';
    out << "Generated test cases: " << fr.generated << '\n';
    out << "Mismatching test cases: " << fr.mismatching << " (" << percent(fr.mismatching, fr.generated) << ")\n";
    if (!fr.groups.empty()) {
      out << "  Error Types:\n";
      for (const auto& g : fr.groups) {
        out << "    + " << g.ub_type << " => " << g.count << " Errors\n";
        out << "        Example call: " << testgen::to_string(g.example) << '\n';
      }
    }
    for (const auto& g : fr.groups) {
      out << "\n------ Detected Error ------\n";
      out << "Call: " << testgen::to_string(g.example) << '\n';
      out << "Error Type: " << g.ub_type << '\n';
      for (const auto& f : g.findings) {
        out << kDashes << '\n';
        side(out, f, true, ubrm);
        out << '\n';
        side(out, f, false, ubrm);
      }
      out << kRule << '\n';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace poitest::report
