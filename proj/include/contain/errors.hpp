#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace contain {

// Malformed input file. line() is 1-based; 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Precondition violated by the caller (unknown node, empty seed set, unreachable budget, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative procedure gave up. Carries the last iterate so callers can inspect it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_value, std::vector<double> last_iterate = {})
      : std::runtime_error(what), last_value_(last_value), last_iterate_(std::move(last_iterate)) {}

  double last_value() const noexcept { return last_value_; }
  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_value_;
  std::vector<double> last_iterate_;
};

}  // namespace contain
