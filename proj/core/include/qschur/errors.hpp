#pragma once

#include <stdexcept>
#include <string>

namespace qschur {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. inverse of 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition that is not a plain domain issue (non-Hermitian input, bad payload).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Incompatible matrix or polynomial shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: singular or ill-conditioned system, solver failure.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, double condition = 0.0)
      : Error(what), condition_(condition) {}

  /// Condition estimate at the time of failure (0 when not applicable).
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Evaluation on a sphere where a denominator vanishes. The sphere is [x + Iy].
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double x, double y) : Error(what), x_(x), y_(y) {}

  double sphere_x() const noexcept { return x_; }
  double sphere_y() const noexcept { return y_; }

 private:
  double x_;
  double y_;
};

/// Series evaluation requested outside the region of convergence.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Resolvent of a colligation is not invertible at the requested point.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

/// Quaternion passed as a root is not a zero of the polynomial.
class NotARootError : public Error {
 public:
  using Error::Error;
};

/// Blaschke product construction failed (partial product vanished unexpectedly).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qschur
