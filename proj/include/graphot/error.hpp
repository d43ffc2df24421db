#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `line()` is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input violates a documented invariant (self-loop, bad mass, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Vector length does not match the graph it is used with.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Positive flow leaves or enters a vertex of zero density (infinite energy).
class InfeasibleFlow : public Error {
 public:
  using Error::Error;
};

/// No transport path with k staggered steps joins the two distributions,
/// so the discrete distance is +infinity.
class InfeasibleTransport : public Error {
 public:
  using Error::Error;
};

class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for a dense baseline.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver stopped before meeting its tolerances.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residual_history)
      : Error(what), history_(std::move(residual_history)) {}
  const std::vector<double>& residual_history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace graphot
