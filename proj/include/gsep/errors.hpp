#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsep {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::size_t position_;
};

class InvalidPath : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-path"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-argument"; }
};

// Raised when an exhaustive computation would exceed its configured budget.
// Never used to signal a verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "budget-exceeded"; }
};

class Overflow : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "overflow"; }
};

}  // namespace gsep
