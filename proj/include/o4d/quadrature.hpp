#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace o4d::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule (Newton iteration on P_n).
const Rule& gauss_legendre(int n);

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// One Gauss-Kronrod 7/15 panel on [a, b].
Result gk15(const std::function<double(double)>& f, double a, double b);

struct AdaptiveOptions {
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  std::size_t max_panels = 200000;
};

/// Globally adaptive Gauss-Kronrod integration over consecutive panels
/// [breaks[0], breaks[1]], [breaks[1], breaks[2]], ...  The panel with the
/// largest error estimate is bisected until the summed error meets the
/// tolerance.  Summation runs over panels in left-to-right order, so the
/// result does not depend on refinement history beyond the final partition.
Result integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 const AdaptiveOptions& opt = {});

inline Result integrate(const std::function<double(double)>& f, double a, double b,
                        const AdaptiveOptions& opt = {}) {
  const double br[2] = {a, b};
  return integrate(f, br, opt);
}

/// Finite-difference weights for the `order`-th derivative at x0 from the
/// given stencil (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> stencil, int order);

}  // namespace o4d::quad
