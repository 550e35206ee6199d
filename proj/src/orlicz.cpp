#include "o4d/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "o4d/bubbles.hpp"
#include "o4d/errors.hpp"
#include "o4d/quadrature.hpp"

namespace o4d::orlicz {

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kTwoPi2 = 2.0 * kPi2;
constexpr double kMaxExponent = 700.0;

// (e^x - 1) e^{-4s} without forming e^x on its own.
double exp_weight(double x, double s) {
  const double e = x - 4.0 * s;
  if (e > kMaxExponent) throw OverflowError("exponential integrand overflows at s=" + std::to_string(s), s);
  if (x < 1e-3) return std::expm1(x) * std::exp(-4.0 * s);
  return std::exp(e) * -std::expm1(-x);
}

// Integral of (e^{beta v^2} - 1) e^{-4s} over the grid span.
double exp_integral(const LogRadialFunction& f, double beta, double rel_tol) {
  f.validate();
  const Spline sp(f.grid.s, f.values);
  std::vector<double> br = f.grid.s;
  br.erase(std::unique(br.begin(), br.end()), br.end());
  // v^2 e^{-4s} bounds the integrand scale; a tiny absolute floor avoids chasing zeros.
  double vmax = 0.0;
  for (double v : f.values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0 || beta == 0.0) return 0.0;
  const auto r = quad::integrate(
      [&](double s) {
        const double v = sp(s);
        return exp_weight(beta * v * v, s);
      },
      br, {.rel_tol = rel_tol, .abs_tol = 1e-300, .max_panels = 2000000});
  if (!r.converged) throw NumericalError("Orlicz quadrature did not converge");
  return kTwoPi2 * r.value;
}

}  // namespace

void OrliczConfig::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ValidationError("kappa must be positive");
  if (!(lambda_tol > 0.0 && lambda_tol < 1e-2)) throw ValidationError("lambda_tol must lie in (0, 1e-2)");
  if (bracket_lo && bracket_hi && !(*bracket_lo < *bracket_hi)) throw ValidationError("bracket lo must be < hi");
  if (bracket_lo && !(*bracket_lo > 0.0)) throw ValidationError("bracket lo must be positive");
  if (max_iter < 1) throw ValidationError("max_iter must be positive");
}

double orlicz_functional(const LogRadialFunction& f, double lambda, double quad_rel_tol) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  return exp_integral(f, 1.0 / (lambda * lambda), quad_rel_tol);
}

NormResult orlicz_norm_detail(const LogRadialFunction& f, const OrliczConfig& cfg) {
  cfg.validate();
  f.validate();
  NormResult res;
  double vmax = 0.0;
  for (double v : f.values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return res;

  // J above kappa (or overflowing) means lambda is below the norm.
  auto above = [&](double lam) {
    try {
      return orlicz_functional(f, lam, cfg.quad_rel_tol) > cfg.kappa;
    } catch (const OverflowError&) {
      return true;
    }
  };

  double lo = cfg.bracket_lo.value_or(0.0);
  double hi = cfg.bracket_hi.value_or(10.0 * vmax);
  if (!cfg.bracket_lo) {
    const double l2 = radial::norms(f).l2;
    lo = l2 > 0.0 ? l2 / 10.0 : vmax * 1e-3;
  }
  if (!(lo < hi)) lo = hi / 2.0;

  while (above(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++res.expansions > cfg.max_iter) throw NumericalError("Orlicz bracket expansion failed (upper end)");
  }
  while (!above(lo)) {
    hi = lo;
    lo /= 2.0;
    if (++res.expansions > cfg.max_iter) throw NumericalError("Orlicz bracket expansion failed (lower end)");
  }
  // Bisection in log lambda.
  while ((hi - lo) > cfg.lambda_tol * hi) {
    if (++res.iterations > cfg.max_iter) throw NumericalError("Orlicz bisection did not converge");
    const double mid = std::sqrt(lo * hi);
    if (above(mid))
      lo = mid;
    else
      hi = mid;
  }
  res.lo = lo;
  res.hi = hi;
  res.lambda = 0.5 * (lo + hi);
  return res;
}

double orlicz_norm(const LogRadialFunction& f, const OrliczConfig& cfg) { return orlicz_norm_detail(f, cfg).lambda; }

TmResult tm_functional(const LogRadialFunction& f, double beta, double quad_rel_tol) {
  if (!(beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  TmResult r;
  r.value = exp_integral(f, beta, quad_rel_tol);
  const double l2 = radial::norms(f).l2;
  r.l2_squared = l2 * l2;
  r.ratio = r.l2_squared > 0.0 ? r.value / r.l2_squared : 0.0;
  return r;
}

RadialTest RadialTest::gaussian() { return {"gaussian", [](double r) { return std::exp(-r * r); }}; }
RadialTest RadialTest::one() { return {"one", [](double) { return 1.0; }}; }
RadialTest RadialTest::zero() { return {"zero", [](double) { return 0.0; }}; }

RadialTest RadialTest::plateau() {
  // 1 on r <= 1/2, smooth step down to 0 at r = 1.
  auto h = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  return {"plateau", [h](double r) {
            const double x = 2.0 * r - 1.0;
            if (x <= 0.0) return 1.0;
            if (x >= 1.0) return 0.0;
            return h(1.0 - x) / (h(1.0 - x) + h(x));
          }};
}

ConcentrationReport pair_concentration(double alpha, const RadialTest& test, double eta_width) {
  if (!(alpha >= 2.0)) throw ValidationError("pair_concentration: alpha must be >= 2");
  const bubbles::Falpha fa(alpha, eta_width);
  const auto& phi = test.phi;
  const quad::AdaptiveOptions o{.rel_tol = 1e-13, .abs_tol = 1e-300, .max_panels = 200000};
  const double beta = 32.0 * kPi2;

  ConcentrationReport rep;
  rep.alpha = alpha;
  rep.phi_at_zero = phi(0.0);

  // Each region integrates in s, dx = 2 pi^2 e^{-4s} ds and |Delta u|^2 = e^{4s} (v'' - 2v')^2.
  auto lap = [&](double s) {
    const double l = fa.lap_s(s);
    return kTwoPi2 * l * l * phi(std::exp(-s));
  };
  auto ex = [&](double s) {
    const double v = fa.v(s);
    return kTwoPi2 * exp_weight(beta * v * v, s) * phi(std::exp(-s));
  };

  const double inner_br[6] = {alpha, alpha + 0.5, alpha + 2.0, alpha + 6.0, alpha + 20.0, alpha + 60.0};
  std::vector<double> ann_br;
  const int pieces = std::max(8, static_cast<int>(alpha));
  for (int i = 0; i <= pieces; ++i) ann_br.push_back(alpha * i / pieces);
  const double so = fa.s_outer();
  const double outer_br[5] = {so, 0.75 * so, 0.5 * so, 0.25 * so, 0.0};

  rep.split_lap = {quad::integrate(lap, inner_br, o).value, quad::integrate(lap, ann_br, o).value,
                   quad::integrate(lap, outer_br, o).value};
  rep.split_exp = {quad::integrate(ex, inner_br, o).value, quad::integrate(ex, ann_br, o).value,
                   quad::integrate(ex, outer_br, o).value};
  rep.pairing_lap = rep.split_lap[0] + rep.split_lap[1] + rep.split_lap[2];
  rep.pairing_exp = rep.split_exp[0] + rep.split_exp[1] + rep.split_exp[2];
  return rep;
}

}  // namespace o4d::orlicz
