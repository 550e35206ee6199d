#include "o4d/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "o4d/errors.hpp"

namespace o4d {

void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag, std::vector<double>& upper,
                       std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

Spline::Spline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw ValidationError("spline: x and y differ in length");
  if (x_.empty()) throw ValidationError("spline: no data");
  m_.assign(x_.size(), 0.0);
  std::size_t first = 0;
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (x_[i] < x_[i - 1]) throw ValidationError("spline: abscissae must be nondecreasing");
    if (x_[i] == x_[i - 1]) {
      fit_segment(first, i);
      first = i;
    }
  }
  fit_segment(first, x_.size());
}

void Spline::fit_segment(std::size_t first, std::size_t last) {
  const std::size_t n = last - first;
  const double* x = x_.data() + first;
  const double* y = y_.data() + first;
  double* m = m_.data() + first;
  if (n <= 2) return;  // constant or linear: zero curvature
  if (n == 3) {
    const double d0 = (y[1] - y[0]) / (x[1] - x[0]);
    const double d1 = (y[2] - y[1]) / (x[2] - x[1]);
    const double c = 2.0 * (d1 - d0) / (x[2] - x[0]);
    m[0] = m[1] = m[2] = c;
    return;
  }
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  // Unknowns m[1..n-2]; m[0] and m[n-1] are eliminated with the not-a-knot conditions.
  const std::size_t k = n - 2;
  std::vector<double> lo(k, 0.0), di(k, 0.0), up(k, 0.0), rhs(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = j + 1;
    lo[j] = h[i - 1];
    di[j] = 2.0 * (h[i - 1] + h[i]);
    up[j] = h[i];
    rhs[j] = 6.0 * (d[i] - d[i - 1]);
  }
  {
    const double h0 = h[0], h1 = h[1];
    di[0] = (h0 + h1) * (h0 + 2.0 * h1) / h1;
    up[0] = (h1 * h1 - h0 * h0) / h1;
  }
  {
    const double a = h[n - 3], b = h[n - 2];
    lo[k - 1] = (a * a - b * b) / a;
    di[k - 1] = (a + b) * (2.0 * a + b) / a;
  }
  if (k == 2) {
    // Four nodes: both rows were overwritten above, solve the 2x2 directly.
    const double det = di[0] * di[1] - up[0] * lo[1];
    const double m1 = (rhs[0] * di[1] - up[0] * rhs[1]) / det;
    const double m2 = (di[0] * rhs[1] - lo[1] * rhs[0]) / det;
    rhs[0] = m1;
    rhs[1] = m2;
  } else {
    solve_tridiagonal(lo, di, up, rhs);
  }
  for (std::size_t j = 0; j < k; ++j) m[j + 1] = rhs[j];
  m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
  {
    const double a = h[n - 3], b = h[n - 2];
    m[n - 1] = ((a + b) * m[n - 2] - b * m[n - 3]) / a;
  }
}

std::size_t Spline::cell(double s) const {
  if (!(s >= x_.front() && s <= x_.back()))
    throw ValidationError("spline evaluation at s=" + std::to_string(s) + " outside [" +
                          std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
  if (x_.size() == 1) return 0;
  auto it = std::upper_bound(x_.begin(), x_.end(), s);
  std::size_t i = it == x_.end() ? x_.size() - 1 : static_cast<std::size_t>(it - x_.begin());
  // i is the first node > s (or the end); the cell starts one before.
  i = i == 0 ? 0 : i - 1;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  while (i > 0 && x_[i + 1] == x_[i]) --i;  // at s_max of a trailing pair
  return i;
}

double Spline::eval_cell(std::size_t i, double s) const {
  if (x_.size() == 1) return y_[0];
  const double h = x_[i + 1] - x_[i];
  if (h == 0.0) return y_[i + 1];
  const double a = (x_[i + 1] - s) / h;
  const double b = (s - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double Spline::operator()(double s) const { return eval_cell(cell(s), s); }

double Spline::deriv(double s, int order) const {
  if (x_.size() == 1) return 0.0;
  const std::size_t i = cell(s);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - s) / h;
  const double b = (s - x_[i]) / h;
  if (order == 1)
    return (y_[i + 1] - y_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
  if (order == 2) return a * m_[i] + b * m_[i + 1];
  throw ValidationError("spline derivative order must be 1 or 2");
}

}  // namespace o4d
