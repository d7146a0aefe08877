#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace descartes {

/// Base class for failures of a computation on otherwise well-formed input.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroPolynomialError : public ComputationError {
 public:
  ZeroPolynomialError() : ComputationError("zero polynomial") {}
};

/// No finite upper bracket for the global condition number is available.
class UnboundedConditionError : public ComputationError {
 public:
  UnboundedConditionError() : ComputationError("unbounded condition") {}
};

class NoConvergenceError : public ComputationError {
 public:
  explicit NoConvergenceError(const std::string& detail)
      : ComputationError("no convergence: " + detail) {}
};

class InvalidModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input. `line` is 1-based, 0 when not tied to a file.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::invalid_argument(line == 0 ? what
                                        : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace descartes
