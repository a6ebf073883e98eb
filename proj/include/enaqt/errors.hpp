#pragma once

#include <stdexcept>
#include <string>

namespace enaqt {

// Bad input to a builder or operation (site index, dimensions, rates).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure: eigensolver non-convergence, positivity violation.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Liouvillian kernel is not one-dimensional at the working tolerance.
class DegeneracyError : public NumericError {
 public:
  DegeneracyError(const std::string& what, double sigma_min, double sigma_second)
      : NumericError(what), sigma_min_(sigma_min), sigma_second_(sigma_second) {}

  double sigma_min() const { return sigma_min_; }
  double sigma_second() const { return sigma_second_; }

 private:
  double sigma_min_;
  double sigma_second_;
};

// Two routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation not defined for this configuration (e.g. eigen-space populations
// with two-exciton states).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace enaqt
