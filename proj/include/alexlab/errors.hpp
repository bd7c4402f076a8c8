#pragma once

#include <stdexcept>
#include <string>

namespace alexlab {

// Base of every error raised by the library. The CLI maps the three
// subclasses onto exit codes 1, 2 and 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (presentation files, Thurston data, CLI arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A documented computational limit was exceeded (gcd variable count,
// polytope dimension).
class LimitError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but mathematically invalid for the requested
// operation (ambient mismatch, zero polynomial, non-unimodular matrix, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

}  // namespace alexlab
