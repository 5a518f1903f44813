#pragma once

#include <stdexcept>
#include <string>

namespace layermie {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: NaN, non-positive radius, non-orthonormal incidence, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Violated call precondition (e.g. realizing a scene that already has a penetrable core).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Bessel order above kMaxOrder.
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

/// Argument at a singular point of the function (h_n at z = 0).
class SingularArgument : public Error {
 public:
  using Error::Error;
};

/// Result outside the representable range, even after exponential scaling.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// The per-mode interface system is numerically singular.
class NumericalResonance : public Error {
 public:
  NumericalResonance(const std::string& what, int n, int parity, double condition)
      : Error(what), n_(n), parity_(parity), condition_(condition) {}

  int mode_order() const { return n_; }
  int parity() const { return parity_; }
  double condition() const { return condition_; }

 private:
  int n_;
  int parity_;
  double condition_;
};

/// Field requested exactly on a material interface.
class AmbiguousRegion : public Error {
 public:
  using Error::Error;
};

}  // namespace layermie
