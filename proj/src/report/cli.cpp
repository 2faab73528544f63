// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include "poitest/report/cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "poitest/report/config.hpp"
#include "poitest/report/report.hpp"
#include "poitest/syntax/parser.hpp"
#include "poitest/testgen/testgen.hpp"

namespace poitest::report {
namespace {

NameRef name_ref(std::string text) {
  if (text.size() > 2 && text.compare(text.size() - 2, 2, "()") == 0) text.resize(text.size() - 2);
  auto colon = text.rfind(':');
  if (colon == std::string::npos) return NameRef{{}, text};
  return NameRef{text.substr(0, colon), text.substr(colon + 1)};
}

template <typename T>
T number(const std::string& flag, const std::string& text) {
  T v{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) throw UsageError(flag + " expects a number, got " + text);
  return v;
}

double seconds(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0)) throw UsageError("-to expects a positive number of seconds, got " + text);
  return v;
}

syntax::SourceModule load_module(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return syntax::parse_module(ss.str(), path);
}

void dump_traces(const std::string& path, const testgen::Harness& h, const testgen::CampaignResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& fr : result.functions) {
    for (const auto& g : fr.groups) {
      auto run = h.run(g.example);
      out << "% " << testgen::to_string(g.example) << '\n';
      for (const auto& e : run.old_run.trace.elements) out << "old " << tracer::to_string(e) << '\n';
      for (const auto& e : run.new_run.trace.elements) out << "new " << tracer::to_string(e) << '\n';
    }
  }
}

}  // namespace

std::string usage() {
  return "usage: poitest -old FILE -new FILE -pois [CFG:]NAME -funs [CFG:]NAME -to SECONDS\n"
         "               [-config [CFG:]NAME] [-seed N] [-max-itcs N] [-dump-trace PATH]\n"
         "               [-replay PATH] [-save-itcs PATH]\n"
         "  -old, -new   MiniFun sources of each version; repeat for extra modules\n"
         "  -pois        POI relation defined in configuration file CFG\n"
         "  -funs        input-function list\n"
         "  -to          campaign timeout per input function (not needed with -replay)\n"
         "  -config      mode block; NUAI when omitted\n"
         "  -seed        generator seed\n"
         "  -max-itcs    stop each function after N test cases\n"
         "  -dump-trace  write both traces of every reported example\n"
         "  -replay      run the test cases stored in PATH instead of generating\n"
         "  -save-itcs   store every mismatching test case\n";
}

CliInvocation parse_cli(const std::vector<std::string>& args) {
  CliInvocation inv;
  bool have_pois = false;
  bool have_funs = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& flag = args[i];
    if (i + 1 >= args.size()) throw UsageError("missing value for " + flag);
    const std::string& v = args[++i];
    if (flag == "-old") inv.old_files.push_back(v);
    else if (flag == "-new") inv.new_files.push_back(v);
    else if (flag == "-pois") inv.pois = name_ref(v), have_pois = true;
    else if (flag == "-funs") inv.funs = name_ref(v), have_funs = true;
    else if (flag == "-config") inv.config = name_ref(v);
    else if (flag == "-to") inv.timeout_s = seconds(v);
    else if (flag == "-seed") inv.seed = number<std::uint64_t>(flag, v);
    else if (flag == "-max-itcs") inv.max_itcs = number<std::size_t>(flag, v);
    else if (flag == "-dump-trace") inv.dump_trace = v;
    else if (flag == "-replay") inv.replay = v;
    else if (flag == "-save-itcs") inv.save_itcs = v;
    else throw UsageError("unknown flag " + flag);
  }
  if (inv.old_files.empty() || inv.new_files.empty()) throw UsageError("-old and -new are required");
  if (!have_pois || !have_funs) throw UsageError("-pois and -funs are required");
  if (!inv.timeout_s && !inv.replay && !inv.max_itcs) throw UsageError("-to is required");

  std::string file = inv.pois.file;
  if (file.empty()) file = inv.funs.file;
  if (file.empty() && inv.config) file = inv.config->file;
  if (file.empty()) throw UsageError("no configuration file given; write -pois FILE:NAME");
  for (NameRef* r : {&inv.pois, &inv.funs, inv.config ? &*inv.config : nullptr})
    if (r && r->file.empty()) r->file = file;
  return inv;
}

int run_cli(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  try {
    std::map<std::string, ConfigFile> files;
    auto cfg_file = [&](const NameRef& r) -> const ConfigFile& {
      auto it = files.find(r.file);
      if (it == files.end()) it = files.emplace(r.file, load_config(r.file)).first;
      return it->second;
    };
    compare::PoiRelation rel = cfg_file(inv.pois).relation(inv.pois.name);
    std::vector<FunctionId> funs = cfg_file(inv.funs).functions(inv.funs.name);
    compare::ComparisonConfig cfg =
        inv.config ? cfg_file(*inv.config).config(inv.config->name) : compare::build_mode_config(compare::Mode::Nuai);

    std::vector<syntax::SourceModule> old_modules, new_modules;
    for (const auto& f : inv.old_files) old_modules.push_back(load_module(f));
    for (const auto& f : inv.new_files) new_modules.push_back(load_module(f));
    testgen::Harness harness(old_modules, new_modules, rel, cfg);

    testgen::CampaignResult result;
    if (inv.replay) {
      result = testgen::replay(harness, testgen::read_itcs(*inv.replay));
    } else {
      std::uint64_t seed = inv.seed ? *inv.seed : std::random_device{}();
      if (!inv.seed) err << "seed: " << seed << '\n';
      testgen::Rng rng(seed);
      testgen::CampaignLimits limits;
      limits.timeout_s = inv.timeout_s;
      limits.max_itcs = inv.max_itcs;
      result = testgen::run_campaign(harness, funs, limits, rng);
    }
    out << render_report(result, cfg.ubrm);

    if (inv.dump_trace) dump_traces(*inv.dump_trace, harness, result);
    if (inv.save_itcs) {
      std::vector<testgen::Itc> failing;
      for (const auto& fr : result.functions) failing.insert(failing.end(), fr.failing.begin(), fr.failing.end());
      testgen::write_itcs(*inv.save_itcs, failing);
    }
    return result.total_mismatching() > 0 ? 1 : 0;
  } catch (const Error& e) {
    err << "poitest: " << e.what() << '\n';
    return 2;
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliInvocation inv;
  try {
    inv = parse_cli(args);
  } catch (const UsageError& e) {
    err << "poitest: " << e.what() << '\n' << usage();
    return 2;
  }
  return run_cli(inv, out, err);
}

}  // namespace poitest::report
