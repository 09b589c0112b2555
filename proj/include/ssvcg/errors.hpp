#pragma once

#include <stdexcept>
#include <string>

namespace ssvcg {

/// Raised when an iterative solver cannot bracket or converge within its cap.
class ConvergenceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a simplex solve produces a point that fails its own residual check.
class NumericalInstability : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A profile that must be sorted in descending order was not.
class OrderViolation : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Sample sets that are empty, mis-shaped or too large.
class SampleError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ssvcg
