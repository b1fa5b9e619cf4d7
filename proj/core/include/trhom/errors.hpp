#pragma once

#include <stdexcept>
#include <string>

namespace trhom {

// Bad inputs: malformed configs, mismatched grids, out-of-range parameters.
// The CLI maps this to exit code 1.
class InvalidInput : public std::runtime_error {
public:
  explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that ran but failed a numerical validity condition
// (no dip found, baseline unusable, non-unitary matrix, ...).
// The CLI maps this to exit code 2.
class NumericFailure : public std::runtime_error {
public:
  explicit NumericFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem trouble while reading or writing artifacts. CLI exit code 3.
class IoFailure : public std::runtime_error {
public:
  explicit IoFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace trhom
