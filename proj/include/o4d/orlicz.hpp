#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "o4d/radial.hpp"

namespace o4d::orlicz {

struct OrliczConfig {
  double kappa = 1.0;
  double lambda_tol = 1e-9;
  std::optional<double> bracket_lo, bracket_hi;
  int max_iter = 200;
  double quad_rel_tol = 1e-11;

  void validate() const;
};

/// J(lambda) = 2 pi^2 int (e^{v^2/lambda^2} - 1) e^{-4s} ds over the grid span.
/// Throws OverflowError when v^2/lambda^2 - 4s exceeds 700 somewhere.
double orlicz_functional(const LogRadialFunction& f, double lambda, double quad_rel_tol = 1e-11);

struct NormResult {
  double lambda = 0.0;
  double lo = 0.0, hi = 0.0;  ///< final bracket, J(lo) > kappa >= J(hi)
  int iterations = 0;
  int expansions = 0;
};

NormResult orlicz_norm_detail(const LogRadialFunction& f, const OrliczConfig& cfg = {});
double orlicz_norm(const LogRadialFunction& f, const OrliczConfig& cfg = {});

struct TmResult {
  double value = 0.0;
  double l2_squared = 0.0;
  double ratio = 0.0;  ///< value / ||u||_{L2}^2 (0 when u = 0)
};

/// int (e^{beta u^2} - 1) dx.
TmResult tm_functional(const LogRadialFunction& f, double beta, double quad_rel_tol = 1e-11);

/// Radial test function phi(r).
struct RadialTest {
  std::string name;
  std::function<double(double)> phi;

  static RadialTest gaussian();  ///< e^{-r^2}
  static RadialTest one();       ///< phi = 1
  static RadialTest zero();
  static RadialTest plateau();   ///< 1 on r <= 1/2, smooth, 0 for r >= 1
};

struct ConcentrationReport {
  double alpha = 0.0;
  double pairing_lap = 0.0;  ///< int |Delta f_alpha|^2 phi
  double pairing_exp = 0.0;  ///< int (e^{32 pi^2 f_alpha^2} - 1) phi
  /// inner (|x| <= e^{-alpha}), annulus (e^{-alpha} < |x| <= 1), outer (|x| > 1)
  std::array<double, 3> split_lap{};
  std::array<double, 3> split_exp{};
  double phi_at_zero = 0.0;
};

/// Both pairings of f_alpha against phi, by quadrature over the closed form.
ConcentrationReport pair_concentration(double alpha, const RadialTest& phi, double eta_width = 1.0);

}  // namespace o4d::orlicz
