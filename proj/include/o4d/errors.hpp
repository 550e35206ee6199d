#pragma once

#include <stdexcept>
#include <string>

namespace o4d {

/// Bad input: malformed data, violated preconditions, unknown options.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  static constexpr int exit_code = 2;
};

/// Overflow, non-convergence, or an integrand the quadrature cannot resolve.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  static constexpr int exit_code = 3;
};

/// Raised by the Orlicz/Trudinger-Moser integrators when exp() would overflow.
/// `s` is the log-radius at which it happened.
class OverflowError : public NumericalError {
 public:
  OverflowError(const std::string& what, double s) : NumericalError(what), s_(s) {}
  double s() const noexcept { return s_; }

 private:
  double s_;
};

}  // namespace o4d
