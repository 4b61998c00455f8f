#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heatctl {

/// Bad user input: malformed sizes, non-positive weights, unknown names.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A boundary portion that must have positive length ended up empty.
class MeasureZeroViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Base for every failure of an iterative numerical method.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

class SolverFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class EigenFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class OcpFailure : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NoContraction : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace heatctl
