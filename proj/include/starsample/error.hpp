#pragma once

#include <stdexcept>
#include <string>

namespace starsample {

// Invalid caller-supplied values (bad vertex ids, empty targets, n* > n).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters outside the region where a formula is defined (e.g. s in {0,1}
// for the SSS approximations).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sample index past the approximation horizon.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed input file; the message carries the line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace starsample
