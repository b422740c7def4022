#pragma once

#include <stdexcept>
#include <string>

namespace ftle {

// Validation failures (bad indices, shape mismatches, parameter ranges).
// CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// I/O and file-format failures (bad magic, truncated payload, ...). CLI maps
// these to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ftle
