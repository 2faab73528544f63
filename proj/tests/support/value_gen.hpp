// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>
#include <vector>

#include "poitest/eval/value.hpp"
#include "poitest/tracer/tracer.hpp"

namespace testing_support {

using poitest::eval::Value;

class ValueGen {
 public:
  explicit ValueGen(std::uint64_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Value value(int depth = 0) {
    int k = pick(0, depth > 2 ? 2 : 5);
    switch (k) {
      case 0: return Value::integer(pick(-20, 20));
      case 1: return Value::atom(std::string(1, static_cast<char>('a' + pick(0, 4))));
      case 2: return Value::string(std::string(static_cast<std::size_t>(pick(0, 3)), 'x'));
      case 3: return Value::list(values(depth + 1));
      case 4: return Value::tuple(values(depth + 1));
      default: return Value::nil();
    }
  }

  std::vector<Value> values(int depth) {
    std::vector<Value> out(static_cast<std::size_t>(pick(0, 3)));
    for (auto& v : out) v = value(depth);
    return out;
  }

  poitest::Frame frame() { return poitest::Frame{"m", pick(0, 1) ? "f" : "g", pick(0, 2), pick(1, 9)}; }

  /// A trace element on `poi`, with call info and a stack when asked.
  poitest::tracer::TraceElement element(const poitest::Poi& poi, bool ca, bool st) {
    poitest::tracer::TraceElement te{poi, value(), std::nullopt, std::nullopt};
    if (ca) te.ca = poitest::tracer::CallArgs{Value::atom("f"), values(1)};
    if (st) {
      std::vector<poitest::Frame> frames(static_cast<std::size_t>(pick(0, 3)));
      for (auto& f : frames) f = frame();
      te.st = frames;
    }
    return te;
  }

  std::vector<poitest::tracer::AitElement> trace(const std::vector<poitest::Poi>& pois, bool ca, bool st,
                                                 int max_len = 6) {
    std::vector<poitest::tracer::AitElement> out(static_cast<std::size_t>(pick(0, max_len)));
    for (auto& e : out) {
      const auto& p = pois[static_cast<std::size_t>(pick(0, static_cast<int>(pois.size()) - 1))];
      if (ca && pick(0, 3) == 0) e = poitest::tracer::CalleeArgs{p, Value::atom("f"), values(1)};
      else e = element(p, ca, st);
    }
    return out;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
