#pragma once

#include <stdexcept>
#include <string>

namespace disparity {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration or invalid request: bad thresholds, unknown config
// keys, a test method applied to a table shape it does not support.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Invalid or degenerate input data: malformed CSV, unknown groups,
// zero-total groups where a rate is required.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

}  // namespace disparity
