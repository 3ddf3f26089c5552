#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (bad header, dimension mismatch, non-numeric token).
/// Carries the 1-based line number where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A domain invariant failed (non-Hermitian, trace, PSD, bad parameter range).
/// The message names the invariant and the measured residual.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A deterministic computation would exceed its configured resource budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge within its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcorr
