#pragma once

#include <stdexcept>
#include <string>

namespace moyal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax or unknown-identifier failure; position is a byte offset into the input.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& message, std::size_t pos)
      : Error(message), position(pos) {}
};

// Raised when an expression has no representation as a sum of monomials,
// e.g. a negative power of a multi-term sum.
struct NormalizeError : Error {
  using Error::Error;
};

// Numeric evaluation failure: unbound variable, ln(0), division by zero.
struct EvalError : Error {
  using Error::Error;
};

}  // namespace moyal
