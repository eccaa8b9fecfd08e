#pragma once

#include <stdexcept>
#include <string>

namespace kvn {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (expression DSL or model file). Carries a byte
// offset into the offending line when known (-1 otherwise).
struct ParseError : Error {
  explicit ParseError(const std::string& what, long position = -1)
      : Error(what), pos(position) {}
  long pos;
};

// A precondition of the theory was violated: undeclared symbol, missing
// commutation relation, operation outside its domain.
struct TheoryError : Error {
  using Error::Error;
};

// Numerical evolution left its validity envelope (norm drift, blow-up).
struct NumericError : Error {
  using Error::Error;
};

}  // namespace kvn
