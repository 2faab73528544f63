// Copyright 2026 The poitest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace poitest {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string path, int line, int column, std::string message)
      : Error(format(path, line, column, message)),
        path_(std::move(path)),
        line_(line),
        column_(column),
        detail_(std::move(message)) {}

  const std::string& path() const { return path_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  static std::string format(const std::string& path, int line, int column, const std::string& message) {
    return (path.empty() ? std::string("<input>") : path) + ":" + std::to_string(line) + ":" +
           std::to_string(column) + ": " + message;
  }

  std::string path_;
  int line_;
  int column_;
  std::string detail_;
};

/// Collector received an event sequence that violates the trace protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration file, mode name, or report field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace poitest
