// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "poitest/report/cli.hpp"

int main(int argc, char** argv) {
  return poitest::report::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
