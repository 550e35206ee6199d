#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "o4d/grid.hpp"
#include "o4d/spline.hpp"

namespace o4d {

/// Radial function u on R^4 stored as v(s) = u(e^{-s}) on a log grid.
struct LogRadialFunction {
  std::string name;
  std::optional<std::string> closed_form;
  LogGrid grid;
  std::vector<double> values;

  /// Finite values, one per node, valid grid.
  void validate() const;
  std::size_t size() const { return values.size(); }
};

/// Samples `fn(s)` on every node of `grid`.  At a repeated node the two
/// copies get `left(s)` / `fn(s)` if `left` is given, else both `fn(s)`.
LogRadialFunction sample(const LogGrid& grid, const std::function<double(double)>& fn,
                         std::string name = {}, const std::function<double(double)>& left = {});

/// c * f on the same grid.
LogRadialFunction scaled(const LogRadialFunction& f, double c);

/// Resamples f (by its spline) onto another grid.  Nodes outside f's span
/// get `outside_low` below s_min and the last value of f above s_max.
LogRadialFunction resample(const LogRadialFunction& f, const LogGrid& grid, double outside_low = 0.0);

/// a + c*b on a's grid (b resampled when the grids differ).
LogRadialFunction axpy(const LogRadialFunction& a, double c, const LogRadialFunction& b);

namespace radial {

/// Inverse of the log-radius substitution: s_i = -log r_i, sorted ascending.
LogRadialFunction from_radius_samples(std::span<const double> r, std::span<const double> u);

Spline spline_of(const LogRadialFunction& f);

/// Cubic-spline value of f at s; throws ValidationError outside the span.
double eval(const LogRadialFunction& f, double s);

/// Second-order finite differences, one-sided at the ends of every segment.
LogRadialFunction derivative(const LogRadialFunction& f, int order);

enum class NormKind { L2, GRAD, INVR_GRAD, LAP, H2_SUM, SCHROEDINGER };

const char* to_string(NormKind k);
NormKind norm_kind_from_string(const std::string& s);

struct NormSet {
  double l2 = 0, grad = 0, invr_grad = 0, lap = 0, h2_sum = 0, schroedinger = 0;
  double get(NormKind k) const;
};

/// All norms in one pass (v, v', v'' interpolated and integrated with
/// 8-point Gauss-Legendre on every cell).
NormSet norms(const LogRadialFunction& f);
double norm(const LogRadialFunction& f, NormKind kind);

/// Integral of v(s) over the grid span with the same composite rule.
double integrate(const LogRadialFunction& f);

/// Squared L2 norm of u restricted to |x| > radius.
double l2_squared_outside(const LogRadialFunction& f, double radius);

struct InequalityReport {
  double invr_grad = 0;       ///< ||(1/r) d_r u||
  double half_lap = 0;        ///< ||Delta u|| / 2
  double lap_slack = 0;
  bool lap_pass = true;
  double pointwise_max = 0;   ///< max |u(r)|^2 pi^2 r^3 / (||u|| ||grad u||) over r >= r_floor
  double pointwise_at_r = 0;
  double pointwise_slack = 0;
  bool pointwise_pass = true;
  double discretization = 0;  ///< relative change against the half-resolution grid
  bool pass() const { return lap_pass && pointwise_pass; }
};

InequalityReport check_radial_inequalities(const LogRadialFunction& f, double slack = 1e-6,
                                           double r_floor = 0.1);

}  // namespace radial
}  // namespace o4d
