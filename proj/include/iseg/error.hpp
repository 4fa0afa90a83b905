#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iseg {

// Problems with user-supplied data. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyInputError : public DataError {
 public:
  EmptyInputError() : DataError("input contains no measurements") {}
};

class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

// MAD of zero: the noise scale cannot be estimated robustly.
class DegenerateScaleError : public DataError {
 public:
  DegenerateScaleError()
      : DataError(
            "median absolute deviation is zero (more than half of the values are "
            "identical); supply the noise scale explicitly with --sigma") {}
};

// Brute-force routines refuse inputs above their size limit.
class RefusalError : public DataError {
 public:
  using DataError::DataError;
};

// An internal consistency check failed. Exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace iseg
