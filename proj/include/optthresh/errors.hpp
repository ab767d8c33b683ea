#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace optthresh {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (index out of range, delay not
// on the curve, schedule of the wrong length, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Malformed input data. `row` is the 1-based line number in the source, or 0
// when the problem is not tied to a single line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t row, const std::string& what);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

// Invalid configuration: bad model parameters, empty curve, horizon mismatch.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A brute-force oracle refused an instance above its size bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

// The requested damage cap admits no schedule.
class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace optthresh
