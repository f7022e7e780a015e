#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socnewton {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value fed to an operation is malformed: wrong sign, NaN/Inf, empty, etc.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Two operands that must agree in size do not.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// A generator or file spec asks for something unsatisfiable
// (density below 1/n, non-square matrix where a square one is required, ...).
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// Factorization hit a zero (or numerically zero) pivot. pivot_index() reports
// the offending elimination step when the backend exposes it, -1 otherwise.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& msg, std::ptrdiff_t pivot_index)
      : Error(msg), pivot_index_(pivot_index) {}
  std::ptrdiff_t pivot_index() const { return pivot_index_; }

 private:
  std::ptrdiff_t pivot_index_;
};

// An operation whose contract needs a structural property (symmetry, positive
// definiteness, an invertibility bound) was handed a matrix without it.
class HypothesisNotMetError : public Error {
 public:
  using Error::Error;
};

// The plain fixed-point reference iteration failed to converge, so it cannot
// serve as a cross-check.
class OracleFailureError : public Error {
 public:
  using Error::Error;
};

// A problem, matrix, or report file could not be read or parsed.
class ParseError : public Error {
 public:
  using Error::Error;
  // Prefixes the source position: the message becomes "<where>: <msg>".
  ParseError(const std::string& msg, const std::string& where) : Error(where + ": " + msg) {}
};

}  // namespace socnewton
