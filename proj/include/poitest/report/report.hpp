// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "poitest/compare/compare.hpp"
#include "poitest/testgen/testgen.hpp"

namespace poitest::report {

/// Campaign summary per input function followed by one "Detected Error"
/// block per UB type. Which sections a block shows (Trace, Call POI Info,
/// Stack, History) follows `ubrm`. Lines end in '\n' only.
std::string render_report(const testgen::CampaignResult& result, const compare::Ubrm& ubrm);

/// Percentage with two decimals, e.g. "59.18%".
std::string percent(std::size_t part, std::size_t whole);

}  // namespace poitest::report
