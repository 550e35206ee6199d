#include <cmath>
#include <numbers>

#include "doctest.h"
#include "o4d/bubbles.hpp"
#include "o4d/errors.hpp"
#include "o4d/orlicz.hpp"
#include "o4d/quadrature.hpp"
#include "o4d/radial.hpp"

namespace {
// Purely relative comparison (doctest's Approx adds an absolute floor of epsilon).
inline doctest::Approx rel(double v, double eps) { return doctest::Approx(v).epsilon(eps).scale(0.0); }
}  // namespace

using namespace o4d;
using namespace o4d::bubbles;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("profile L") {
  const auto L = profile_L();
  CHECK(L(0.5) == 0.5);
  CHECK(L(2.0) == 1.0);
  CHECK(L(-1.0) == 0.0);
  CHECK(L.deriv_l2() == rel(1.0, 1e-12));
  const auto lim = profile_orlicz_limit(L);
  CHECK(lim.ratio == rel(1.0, 1e-9));
  CHECK(lim.argmax == rel(1.0, 1e-5));
  CHECK(lim.value == rel(0.05627, 1e-4));
  CHECK(lim.value == rel(orlicz_limit_constant(), 1e-12));
  CHECK(profile_orlicz_limit(L.scaled(2)).value == rel(0.11254, 1e-4));
}

TEST_CASE("profile sqrt(s) min(s,1) peaks at s=1") {
  const auto lim = profile_orlicz_limit(profile_sqrt_min());
  CHECK(lim.argmax == rel(1.0, 1e-4));
  CHECK(lim.value == rel(0.05627, 1e-4));
  const auto p2 = profile_psi2();
  CHECK(p2.deriv_l2() == rel(1.0, 1e-9));
  // Normalized to unit ||psi'||, so the peak ratio is sqrt(8/9).
  CHECK(profile_orlicz_limit(p2).value == rel(orlicz_limit_constant() * std::sqrt(8.0 / 9), 1e-9));
}

TEST_CASE("sampled profiles") {
  CHECK_THROWS_AS(Profile::sampled({-0.5, 0.0, 1.0}, {0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(Profile::sampled({0.0, 1.0}, {0.3, 1}), ValidationError);
  CHECK_THROWS_AS(Profile::sampled({0.0, 2.0, 1.0}, {0, 1, 1}), ValidationError);
  const auto p = Profile::sampled({0.0, 0.5, 1.0, 3.0}, {0.0, 0.5, 1.0, 1.0});
  CHECK(p(0.25) == doctest::Approx(0.25));
  CHECK(p(-2.0) == 0.0);
  CHECK(p(5.0) == 1.0);
  CHECK(p.deriv_l2() == rel(1.0, 1e-9));
}

TEST_CASE("property: every profile is zero on s<=0 and Holder-1/2") {
  const std::vector<Profile> profiles{
      profile_L(), profile_psi2(), profile_L().scaled(-3.0), Profile::sampled({0.0, 0.2, 0.7, 2.0}, {0.0, 0.4, -0.1, 0.3}),
      Profile::custom("sin", [](double y) { return std::sin(y); }, [](double y) { return std::cos(y); }, {}, 6.0)};
  for (const auto& p : profiles) {
    CHECK(profile_invariants_hold(p, 1000, 17));
    for (double y : {-5.0, -1.0, -1e-9, 0.0}) CHECK(p(y) == 0.0);
    CHECK(holder_certificate(p, 1000, 3).worst_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("mollifiers are normalized bumps on [-1,1]") {
  for (const auto& rho : {Mollifier::standard(), Mollifier::asymmetric()}) {
    const auto mass = quad::integrate([&](double t) { return rho(t); }, -1.0, 1.0);
    CHECK(std::abs(mass.value - 1.0) <= 1e-12);
    for (double t = -1.5; t <= 1.5; t += 0.01) {
      CHECK(rho(t) >= 0.0);
      if (std::abs(t) >= 1.0) CHECK(rho(t) == 0.0);
    }
  }
  CHECK(Mollifier::standard()(0.3) == doctest::Approx(Mollifier::standard()(-0.3)));
  CHECK(Mollifier::asymmetric()(0.3) > Mollifier::asymmetric()(-0.3));
}

TEST_CASE("mollified L") {
  const auto L = profile_L();
  const auto rho = Mollifier::standard();
  for (double a : {10.0, 100.0}) {
    CHECK(mollified_value(L, a, rho, 1 + 1 / a) == rel(1.0, 1e-13));
    CHECK(mollified_value(L, a, rho, 3.0) == rel(1.0, 1e-13));
    CHECK(mollified_value(L, a, rho, -1 / a) == 0.0);
    CHECK(mollified_value(L, a, rho, -0.5) == 0.0);
    // Away from the kinks L is linear, so the symmetric bump reproduces it.
    CHECK(mollified_value(L, a, rho, 0.5) == rel(0.5, 1e-12));
  }
  double sup = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double y = -0.02 + 1.04 * i / 4000.0;
    sup = std::max(sup, std::abs(mollified_value(L, 100, rho, y) - L(y)));
  }
  CHECK(sup <= 0.1);
  CHECK(sup <= rho.moment_abs(0.5) / std::sqrt(100.0) + 1e-12);

  const auto sampled = mollify_profile(L, 50, rho, 501);
  CHECK(sampled.y.front() == doctest::Approx(-1.0 / 50));
  CHECK(sampled.y.back() == doctest::Approx(L.s_max()));
  CHECK(sampled.values.front() == 0.0);
}

TEST_CASE("eta and f_alpha closed forms") {
  const Falpha f10(10);
  CHECK(f10.eta(1.0) == 0.0);
  CHECK(f10.eta(2.0) == 0.0);
  CHECK(f10.eta(2.5) == 0.0);
  CHECK(f10.eta_r(1.0) == rel(-0.035588, 1e-5));
  CHECK(f10.eta_r(1.0) == rel(-1 / std::sqrt(80 * kPi * kPi), 1e-14));

  const Falpha f8(8);
  CHECK(f8.v(8.0) == rel(0.31831, 1e-5));
  CHECK(f8.v(8.0, true) == rel(std::sqrt(8 / (8 * kPi * kPi)), 1e-14));

  for (double a : {2.0, 5.0, 50.0, 300.0}) {
    const Falpha f(a);
    for (double s : {0.0, a}) {
      CHECK(std::abs(f.v(s, true) - f.v(s)) <= 1e-10 * std::max(1.0, std::abs(f.v(s))));
      CHECK(std::abs(f.d1(s, true) - f.d1(s)) <= 1e-10 * std::max(f.c(), std::abs(f.d1(s))));
    }
  }
  CHECK_THROWS_AS(make_falpha(1.5), ValidationError);
  CHECK_THROWS_AS(make_eta(1.0), ValidationError);

  const auto eta = make_eta(10);
  CHECK(eta.values.back() == 0.0);   // r = 1
  CHECK(eta.values.front() == 0.0);  // r = 2
}

TEST_CASE("appendix closed forms") {
  const auto cf = appendix_closed_forms(10);
  CHECK(cf.l2_II == rel(7.8125e-4, 1e-4));
  CHECK(cf.l2_II == rel((1.0 / 40) * (-25 * std::exp(-40.0) - 1.25 * std::exp(-40.0) +
                                                  (1 - std::exp(-40.0)) / 32), 1e-13));
  CHECK(cf.grad_annulus == rel(0.0125, 1e-6));
  for (double a : {5.0, 10.0, 80.0}) {
    const auto c = appendix_closed_forms(a);
    CHECK(c.lap_inner + c.lap_annulus == rel(1 + 1 / a, 1e-14));
  }
  const auto frozen = eta_constants(1.0);
  const auto fresh = eta_constants_quadrature(1.0);
  CHECK(fresh.l2 == rel(frozen.l2, 1e-9));
  CHECK(fresh.grad == rel(frozen.grad, 1e-9));
  CHECK(fresh.lap == rel(frozen.lap, 1e-9));
}

TEST_CASE("f_alpha quadrature norms match the appendix") {
  for (double a : {5.0, 10.0, 25.0, 50.0}) {
    const auto n = radial::norms(make_falpha(a));
    const auto cf = appendix_closed_forms(a);
    CHECK(n.l2 * n.l2 == rel(cf.l2_sq, 1e-6));
    CHECK(n.grad * n.grad == rel(cf.grad_sq, 1e-6));
    CHECK(n.lap * n.lap == rel(cf.lap_sq, 1e-4));
  }
}

TEST_CASE("bubbles") {
  BubbleSpec pure{50, profile_L(), Mollifier::standard(), false};
  CHECK(bubble_value(pure, 50) == rel(0.795775, 1e-6));
  CHECK(bubble_value(pure, 50) == rel(std::sqrt(50 / (8 * kPi * kPi)), 1e-14));
  CHECK(bubble_value(pure, -1) == 0.0);
  const auto h = make_bubble(pure);
  CHECK(radial::eval(h, 50) == rel(0.795775, 1e-6));
  CHECK(h.closed_form.has_value());

  BubbleSpec bad = pure;
  bad.alpha = 0.5;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  BubbleSpec g{100, profile_L(), Mollifier::standard(), true};
  const auto gb = make_bubble(g);
  const double ig = radial::norm(gb, radial::NormKind::INVR_GRAD);
  CHECK(ig * ig == rel(0.25, 0.02));

  BubbleSpec h100 = g;
  h100.mollified = false;
  const double lg = orlicz::orlicz_norm(gb), lh = orlicz::orlicz_norm(make_bubble(h100));
  CHECK(std::abs(lg - lh) <= 0.01 * lg);
}

TEST_CASE("lemma add1 integrals") {
  const auto [i4, i3] = lemma_add1_integrals(100);
  CHECK(i4 == rel(0.2006, 5e-4));
  CHECK(i3 == rel(0.5025, 2e-4));
  double prev4 = INFINITY, prev3 = INFINITY;
  for (double a : {25.0, 50.0, 100.0, 200.0}) {
    const auto [a4, a3] = lemma_add1_integrals(a);
    CHECK(std::abs(a4 - 0.2) < prev4);
    CHECK(std::abs(a3 - 0.5) < prev3);
    prev4 = std::abs(a4 - 0.2);
    prev3 = std::abs(a3 - 0.5);
  }
  // The far endpoint contributes e^{-alpha}, not another 1/5.
  const auto big = lemma_add1_integrals(1e4);
  CHECK(big.first == rel(0.2, 1e-3));
  CHECK_THROWS_AS(lemma_add1_integrals(1.0), ValidationError);
}
