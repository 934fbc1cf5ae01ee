#pragma once

#include <stdexcept>
#include <string>

namespace dequad {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN (or a disallowed infinity) was passed where a finite value is needed.
class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

// Argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation is not available for the given transform.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (non-positive step, tolerance, M, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The integrand returned NaN/inf at a strictly interior node.
class IntegrandNonFinite : public Error {
 public:
  IntegrandNonFinite(long index, double abscissa)
      : Error("integrand is not finite at node k=" + std::to_string(index) +
              " (x=" + std::to_string(abscissa) + ")"),
        index_(index),
        abscissa_(abscissa) {}

  long index() const noexcept { return index_; }
  double abscissa() const noexcept { return abscissa_; }

 private:
  long index_;
  double abscissa_;
};

// Adaptive refinement hit max_level before meeting the tolerance.
class NoConvergence : public Error {
 public:
  NoConvergence(double best_value, double error_estimate, long evals)
      : Error("no convergence: best value " + std::to_string(best_value) +
              ", estimated error " + std::to_string(error_estimate)),
        best_value_(best_value),
        error_estimate_(error_estimate),
        evals_(evals) {}

  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return error_estimate_; }
  long evals() const noexcept { return evals_; }

 private:
  double best_value_;
  double error_estimate_;
  long evals_;
};

}  // namespace dequad
