#pragma once

#include <stdexcept>
#include <string>

namespace srgkit {

/// Invalid argument, domain violation or malformed input document.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A hypothesis of the analysis does not hold (unstable plant, unbounded
/// operand, infinity where it is not admitted).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

/// Iteration failed to converge or produced non-finite values.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srgkit
