#pragma once

#include <stdexcept>
#include <string>

namespace fracsh {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (fractions, ranges, config lines).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic would leave the 64-bit range, or a search bound was hit.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracsh
