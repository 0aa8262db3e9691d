#pragma once

#include <stdexcept>
#include <string>

namespace nomapair {

// Error taxonomy. The C API maps these onto its status codes, and the CLI
// reuses the same numbers as exit codes.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad value passed to a library entry point (out-of-range index, size
// mismatch, guard exceeded). Reported through the same channel as ConfigError.
class ArgumentError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nomapair
