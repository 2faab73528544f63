// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "poitest/errors.hpp"

namespace poitest::report {

class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Reference `FILE:NAME` into a configuration file. A bare `NAME` uses the
/// file of the first reference that names one. A trailing `()` is ignored.
struct NameRef {
  std::string file;
  std::string name;
};

struct CliInvocation {
  std::vector<std::string> old_files;  // first file holds the input functions
  std::vector<std::string> new_files;
  NameRef pois;
  NameRef funs;
  std::optional<NameRef> config;  // NUAI when absent
  std::optional<double> timeout_s;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_itcs;
  std::optional<std::string> dump_trace;
  std::optional<std::string> replay;
  std::optional<std::string> save_itcs;
};

std::string usage();

/// `args` excludes the program name. Throws UsageError.
CliInvocation parse_cli(const std::vector<std::string>& args);

/// Exit code: 0 when no UB was found, 1 when some was, 2 on usage, config or
/// program errors.
int run_cli(const CliInvocation& inv, std::ostream& out, std::ostream& err);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poitest::report
