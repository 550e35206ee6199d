#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "doctest.h"
#include "o4d/errors.hpp"
#include "o4d/grid.hpp"
#include "o4d/quadrature.hpp"
#include "o4d/radial.hpp"
#include "o4d/spline.hpp"
#include "o4d/verify.hpp"

namespace {
// Purely relative comparison (doctest's Approx adds an absolute floor of epsilon).
inline doctest::Approx rel(double v, double eps) { return doctest::Approx(v).epsilon(eps).scale(0.0); }
}  // namespace

using namespace o4d;
using radial::NormKind;

namespace {

constexpr double kPi = std::numbers::pi;

double max_midpoint_error(const LogRadialFunction& f, double (*exact)(double)) {
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double m = 0.5 * (f.grid.s[i] + f.grid.s[i + 1]);
    err = std::max(err, std::abs(radial::eval(f, m) - exact(m)));
  }
  return err;
}

// u(x) = e^{-|x|^2/2} in log-radius form.
double half_gaussian(double s) { return std::exp(-0.5 * std::exp(-2 * s)); }

}  // namespace

TEST_CASE("from_radius_samples maps radii to ascending s") {
  const std::vector<double> r1{1.0}, u1{3.0};
  const auto one = radial::from_radius_samples(r1, u1);
  REQUIRE(one.size() == 1);
  CHECK(one.grid.s[0] == 0.0);
  CHECK(one.values[0] == 3.0);

  const std::vector<double> r{std::exp(-2.0), std::exp(-1.0), 1.0}, u{1.5, 2.5, 3.5};
  const auto f = radial::from_radius_samples(r, u);
  REQUIRE(f.size() == 3);
  CHECK(f.grid.s[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f.grid.s[1] == doctest::Approx(1.0));
  CHECK(f.grid.s[2] == doctest::Approx(2.0));
  CHECK(f.values == std::vector<double>{3.5, 2.5, 1.5});
}

TEST_CASE("from_radius_samples rejects bad radii") {
  const std::vector<double> u{1, 2};
  CHECK_THROWS_AS(radial::from_radius_samples(std::vector<double>{0.0, 1.0}, u), ValidationError);
  CHECK_THROWS_AS(radial::from_radius_samples(std::vector<double>{-1.0, 1.0}, u), ValidationError);
  CHECK_THROWS_AS(radial::from_radius_samples(std::vector<double>{1.0, 1.0}, u), ValidationError);
  CHECK_THROWS_AS(radial::from_radius_samples(std::vector<double>{1.0, 2.0, 1.5}, std::vector<double>{1, 2, 3}),
                  ValidationError);
}

TEST_CASE("Gaussian sampled in r interpolates to 1e-8 in s") {
  const int n = 512;
  std::vector<double> r(n), u(n);
  for (int i = 0; i < n; ++i) {
    r[i] = std::exp(1.0 - 6.0 * i / (n - 1));  // s from -1 to 5
    u[i] = std::exp(-r[i] * r[i]);
  }
  const auto f = radial::from_radius_samples(r, u);
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double m = 0.5 * (f.grid.s[i] + f.grid.s[i + 1]);
    err = std::max(err, std::abs(radial::eval(f, m) - std::exp(-std::exp(-2 * m))));
  }
  CHECK(err <= 1e-8);
}

TEST_CASE("eval reproduces nodes and cubics") {
  const auto g = LogGrid::uniform(-1.0, 2.0, 64);
  const auto f = sample(g, [](double s) { return s * s * s; });
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(radial::eval(f, g.s[i]) == f.values[i]);
  CHECK(max_midpoint_error(f, [](double s) { return s * s * s; }) <= 1e-13);
  CHECK_THROWS_AS(radial::eval(f, 2.5), ValidationError);
  CHECK_THROWS_AS(radial::eval(f, -1.5), ValidationError);
}

TEST_CASE("spline error on e^{-4s}") {
  auto exact = [](double s) { return std::exp(-4 * s); };
  auto err = [&](std::size_t n) {
    return max_midpoint_error(sample(LogGrid::uniform(0.0, 4.0, n), exact), [](double s) { return std::exp(-4 * s); });
  };
  // Fourth order: doubling the resolution divides the error by about 16.
  const double e256 = err(256), e511 = err(511);
  CHECK(e256 <= 4e-7);
  CHECK(std::log2(e256 / e511) >= 3.8);
  CHECK(err(2048) <= 1e-9);
}

TEST_CASE("property: spline is exact on random cubics over random grids") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-2, 2), gap(0.01, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    auto p = [=](double s) { return c0 + s * (c1 + s * (c2 + s * c3)); };
    LogGrid g;
    g.policy = GridPolicy::Graded;
    double s = -1.0;
    for (int i = 0; i < 20; ++i) {
      g.s.push_back(s);
      s += gap(rng);
    }
    const auto f = sample(g, p);
    std::uniform_real_distribution<double> at(g.s.front(), g.s.back());
    for (int k = 0; k < 20; ++k) {
      const double x = at(rng);
      CHECK(radial::eval(f, x) == doctest::Approx(p(x)).epsilon(1e-11).scale(10));
    }
  }
}

TEST_CASE("derivative: constants, quadratics, sin") {
  const auto g = LogGrid::uniform(0.0, 3.0, 40);
  const auto c = radial::derivative(sample(g, [](double) { return 4.2; }), 1);
  for (double v : c.values) CHECK(std::abs(v) <= 1e-12);
  const auto q1 = radial::derivative(sample(g, [](double s) { return s * s; }), 1);
  const auto q2 = radial::derivative(sample(g, [](double s) { return s * s; }), 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(q1.values[i] == doctest::Approx(2 * g.s[i]).epsilon(1e-10).scale(1));
    CHECK(q2.values[i] == rel(2.0, 1e-9));
  }

  auto sin_err = [](std::size_t n) {
    const auto gg = LogGrid::uniform(0.0, 2 * kPi, n);
    const auto d = radial::derivative(sample(gg, [](double s) { return std::sin(s); }), 1);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d.values[i] - std::cos(gg.s[i])));
    return e;
  };
  const double e512 = sin_err(512), e1023 = sin_err(1023);
  CHECK(e512 <= 1e-4);
  CHECK(e512 / e1023 == rel(4.0, 0.1));
}

TEST_CASE("property: derivative converges at order >= 1.9 on nonuniform grids") {
  auto f = [](double s) { return std::exp(-s * s) * std::cos(3 * s); };
  auto f1 = [](double s) { return std::exp(-s * s) * (-2 * s * std::cos(3 * s) - 3 * std::sin(3 * s)); };
  auto f2 = [](double s) {
    return std::exp(-s * s) * ((4 * s * s - 11) * std::cos(3 * s) + 12 * s * std::sin(3 * s));
  };
  auto err = [&](std::size_t n, int order) {
    LogGrid g;
    g.policy = GridPolicy::Graded;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      g.s.push_back(-2.0 + 4.0 * (t + 0.1 * std::sin(kPi * t)));  // smooth stretching
    }
    const auto d = radial::derivative(sample(g, f), order);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d.values[i] - (order == 1 ? f1 : f2)(g.s[i])));
    return e;
  };
  for (int order : {1, 2}) {
    const double rate = std::log2(err(200, order) / err(400, order));
    CHECK(rate >= 1.9);
  }
}

TEST_CASE("derivative needs order+3 nodes per segment") {
  const auto g = LogGrid::uniform(0.0, 1.0, 4);
  const auto f = sample(g, [](double s) { return s; });
  CHECK_NOTHROW(radial::derivative(f, 1));
  CHECK_THROWS_AS(radial::derivative(f, 2), ValidationError);
}

TEST_CASE("breakpoints split derivatives") {
  // v = |s| with a duplicated node at 0.
  LogGrid g;
  g.policy = GridPolicy::Graded;
  for (int i = -10; i <= 0; ++i) g.s.push_back(0.1 * i);
  for (int i = 0; i <= 10; ++i) g.s.push_back(0.1 * i);
  g.validate();
  CHECK(g.segments().size() == 2);
  const auto f = sample(g, [](double s) { return std::abs(s); });
  const auto d = radial::derivative(f, 1);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(d.values[i] == doctest::Approx(i <= 10 ? -1.0 : 1.0));
}

TEST_CASE("grid validation") {
  LogGrid g;
  g.s = {0, 1, 1, 1, 2};
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g.s = {0, 2, 1};
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g.s = {0, 1, 2, std::nan("")};
  CHECK_THROWS_AS(g.validate(), ValidationError);
  CHECK_THROWS_AS(LogGrid::uniform(0.5, 3, 20).validate_for_analysis(), ValidationError);
  CHECK_THROWS_AS(LogGrid::uniform(-1, 1, 7).validate_for_analysis(), ValidationError);
  CHECK_NOTHROW(LogGrid::uniform(-1, 1, 8).validate_for_analysis());
}

TEST_CASE("graded grid honours windows, breakpoints and budget") {
  GradedSpec spec;
  spec.s_min = -2;
  spec.s_max = 30;
  spec.windows = {{4.0, 6.0, 0.01}};
  spec.breakpoints = {0.0, 5.0};
  const auto g = make_graded_grid(spec);
  g.validate();
  CHECK(g.s.front() == -2.0);
  CHECK(g.s.back() == 30.0);
  CHECK(g.segments().size() == 3);
  double worst_in = 0.0, worst_out = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double h = g.s[i + 1] - g.s[i];
    if (h == 0.0) continue;
    if (g.s[i] >= 4.0 && g.s[i + 1] <= 6.0) worst_in = std::max(worst_in, h);
    worst_out = std::max(worst_out, h);
  }
  CHECK(worst_in <= 0.011);
  CHECK(worst_out <= 0.5 * 1.5);

  setenv("ORLICZ4D_NODE_BUDGET", "100", 1);
  CHECK_THROWS_AS(make_graded_grid(spec), ValidationError);
  unsetenv("ORLICZ4D_NODE_BUDGET");
}

TEST_CASE("quadrature rules") {
  const auto& gl = quad::gauss_legendre(8);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 14);
  CHECK(s == rel(2.0 / 15, 1e-14));
  const auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == rel(std::exp(1.0) - 1, 1e-13));
  const std::vector<double> st{-1, 0, 1};
  const auto w = quad::fd_weights(0.0, st, 2);
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(-2.0));
  CHECK(w[2] == doctest::Approx(1.0));
}

TEST_CASE("composite integration is exact on piecewise cubics") {
  // int_{-1}^{2} (s^3 - s) ds = 15/4 - 3/2.
  const auto f = sample(LogGrid::uniform(-1.0, 2.0, 37), [](double s) { return s * s * s - s; });
  CHECK(radial::integrate(f) == rel(15.0 / 4 - 1.5, 1e-12));
}

TEST_CASE("zero function has zero norms") {
  const auto z = sample(LogGrid::uniform(-2, 6, 100), [](double) { return 0.0; });
  const auto n = radial::norms(z);
  for (auto k : {NormKind::L2, NormKind::GRAD, NormKind::INVR_GRAD, NormKind::LAP, NormKind::H2_SUM,
                 NormKind::SCHROEDINGER})
    CHECK(n.get(k) == 0.0);
  CHECK(radial::check_radial_inequalities(z).pass());
}

TEST_CASE("Gaussian norms match closed forms") {
  // u = e^{-r^2/2}: ||u||^2 = pi^2, ||grad u||^2 = 2 pi^2, ||u'/r||^2 = pi^2,
  // ||lap u||^2 = 6 pi^2, ||(-lap+1)u||^2 = 11 pi^2.
  const auto f = sample(LogGrid::uniform(-3.5, 14.0, 7000), half_gaussian);
  const auto n = radial::norms(f);
  CHECK(n.l2 == rel(kPi, 1e-6));
  CHECK(n.grad == rel(kPi * std::sqrt(2.0), 1e-5));
  CHECK(n.invr_grad == rel(kPi, 1e-5));
  CHECK(n.lap == rel(kPi * std::sqrt(6.0), 1e-5));
  CHECK(n.schroedinger == rel(kPi * std::sqrt(11.0), 1e-5));
  CHECK(n.h2_sum == rel(std::sqrt(n.l2 * n.l2 + n.grad * n.grad + n.lap * n.lap), 1e-14));
  CHECK(std::string(radial::to_string(NormKind::INVR_GRAD)) == "INVR_GRAD");
  CHECK(radial::norm_kind_from_string("LAP") == NormKind::LAP);
  CHECK_THROWS_AS(radial::norm_kind_from_string("H3"), ValidationError);
}

TEST_CASE("property: norms are absolutely homogeneous") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-10, 10);
  const auto f = sample(LogGrid::uniform(-3.5, 14.0, 800), half_gaussian);
  const auto base = radial::norms(f);
  for (int t = 0; t < 10; ++t) {
    const double k = c(rng);
    const auto n = radial::norms(scaled(f, k));
    for (auto kind : {NormKind::L2, NormKind::GRAD, NormKind::INVR_GRAD, NormKind::LAP, NormKind::SCHROEDINGER})
      CHECK(n.get(kind) == rel(std::abs(k) * base.get(kind), 1e-13));
  }
}

TEST_CASE("radial inequalities: Gaussian and a random corpus") {
  const auto g = sample(LogGrid::uniform(-3.0, 10.0, 3000), [](double s) { return std::exp(-std::exp(-2 * s)); });
  const auto rep = radial::check_radial_inequalities(g);
  CHECK(rep.lap_pass);
  CHECK(rep.pointwise_pass);

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 40; ++i) {
    const auto f = verify::random_radial_function(rng, 1500);
    const auto r = radial::check_radial_inequalities(f);
    CHECK(r.invr_grad <= r.half_lap * (1 + 1e-6 + r.discretization));
    CHECK(r.pointwise_max <= 1 + 1e-6 + r.discretization);
  }
}
