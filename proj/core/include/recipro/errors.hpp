#pragma once

#include <stdexcept>
#include <string>

namespace recipro {

/// Malformed or out-of-contract input: bad atoms, bad flags, values outside a
/// declared domain. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric routine could not meet its tolerance (integration, bisection).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A verification was requested under assumptions that do not hold, e.g. an
/// exponent below the admissible threshold. Not a verdict on the inequality.
class PreconditionError : public ValidationError {
 public:
  explicit PreconditionError(const std::string& what) : ValidationError(what) {}
};

}  // namespace recipro
