#pragma once

#include <stdexcept>
#include <string>

namespace kitten {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fock cutoff drops more probability mass than the tolerance allows.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int dim, double tail_mass)
      : Error(what), dim_(dim), tail_mass_(tail_mass) {}
  int dim() const noexcept { return dim_; }
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  int dim_;
  double tail_mass_;
};

/// Operands built on different truncations, or wrong vector lengths.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A requested state has zero norm (e.g. the odd superposition at r = 0).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// A conditional probability was requested with a vanishing herald.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

class NoCrossingError : public Error {
 public:
  using Error::Error;
};

/// A truncation-sensitive result moved when the cutoff was enlarged.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace kitten
