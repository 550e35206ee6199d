#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace o4d {

/// Piecewise not-a-knot cubic spline.  Repeated abscissae split the data
/// into independent segments (see LogGrid).  Segments with fewer than four
/// nodes fall back to the interpolating polynomial of matching degree.
class Spline {
 public:
  Spline() = default;
  Spline(std::vector<double> x, std::vector<double> y);

  /// Value at s.  At a breakpoint the right-hand segment is used.
  /// Throws ValidationError outside [x.front(), x.back()].
  double operator()(double s) const;
  /// First or second derivative of the interpolant.
  double deriv(double s, int order) const;

  /// Index i of the cell [x[i], x[i+1]] containing s, never a zero-width cell.
  std::size_t cell(double s) const;
  /// Evaluation inside a known cell, no bounds check.
  double eval_cell(std::size_t i, double s) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& second() const { return m_; }

 private:
  void fit_segment(std::size_t first, std::size_t last);

  std::vector<double> x_, y_, m_;
};

/// Solves a tridiagonal system in place (Thomas algorithm).
/// `lower[0]` and `upper[n-1]` are ignored.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs);

}  // namespace o4d
