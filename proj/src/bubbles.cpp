#include "o4d/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "o4d/errors.hpp"
#include "o4d/quadrature.hpp"

namespace o4d::bubbles {

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kTwoPi2 = 2.0 * kPi2;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}
}  // namespace

double orlicz_limit_constant() { return 1.0 / std::sqrt(32.0 * kPi2); }

// ---------------------------------------------------------------- profiles

Profile Profile::L() {
  Profile p;
  p.kind_ = ProfileKind::L;
  p.name_ = "L";
  p.kinks_ = {1.0};
  p.s_max_ = 10.0;
  return p;
}

Profile Profile::custom(std::string name, Fn psi, Fn dpsi, std::vector<double> kinks, double s_max) {
  if (!psi || !dpsi) throw ValidationError("custom profile needs psi and psi'");
  if (!(s_max > 0.0)) throw ValidationError("custom profile needs s_max > 0");
  Profile p;
  p.kind_ = ProfileKind::Custom;
  p.name_ = std::move(name);
  p.fn_ = std::move(psi);
  p.dfn_ = std::move(dpsi);
  std::sort(kinks.begin(), kinks.end());
  for (double k : kinks)
    if (k > 0.0 && k < s_max) p.kinks_.push_back(k);
  p.s_max_ = s_max;
  return p;
}

Profile Profile::sampled(std::vector<double> s, std::vector<double> psi, std::string name) {
  if (s.size() != psi.size()) throw ValidationError("profile: s and psi differ in length");
  if (s.empty()) throw ValidationError("profile: no samples");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(psi[i]))
      throw ValidationError("profile: sample " + std::to_string(i) + " is not finite");
    if (s[i] < 0.0) throw ValidationError("profile: s[" + std::to_string(i) + "] is negative");
    if (i > 0 && !(s[i] > s[i - 1])) throw ValidationError("profile: s not strictly increasing at " + std::to_string(i));
  }
  if (s.front() == 0.0 && psi.front() != 0.0) throw ValidationError("profile: psi(0) must be 0");
  if (s.front() > 0.0) {
    s.insert(s.begin(), 0.0);
    psi.insert(psi.begin(), 0.0);
  }
  Profile p;
  p.kind_ = ProfileKind::Sampled;
  p.name_ = std::move(name);
  p.s_max_ = s.back() > 0.0 ? s.back() : 1.0;
  p.s_ = std::move(s);
  p.psi_ = std::move(psi);
  return p;
}

double Profile::operator()(double y) const {
  if (!(y > 0.0)) return 0.0;
  switch (kind_) {
    case ProfileKind::L: return scale_ * std::min(y, 1.0);
    case ProfileKind::Custom: return scale_ * fn_(std::min(y, s_max_));
    case ProfileKind::Sampled: {
      if (y >= s_.back()) return scale_ * psi_.back();
      auto it = std::upper_bound(s_.begin(), s_.end(), y);
      const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
      const double t = (y - s_[i]) / (s_[i + 1] - s_[i]);
      return scale_ * (psi_[i] + t * (psi_[i + 1] - psi_[i]));
    }
  }
  return 0.0;
}

double Profile::deriv(double y) const {
  if (!(y > 0.0)) return 0.0;
  switch (kind_) {
    case ProfileKind::L: return y < 1.0 ? scale_ : 0.0;
    case ProfileKind::Custom: return y < s_max_ ? scale_ * dfn_(y) : 0.0;
    case ProfileKind::Sampled: {
      if (y >= s_.back()) return 0.0;
      auto it = std::upper_bound(s_.begin(), s_.end(), y);
      const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
      return scale_ * (psi_[i + 1] - psi_[i]) / (s_[i + 1] - s_[i]);
    }
  }
  return 0.0;
}

std::vector<double> Profile::kinks() const {
  std::vector<double> k{0.0};
  if (kind_ == ProfileKind::Sampled) {
    k.assign(s_.begin(), s_.end());
    return k;
  }
  k.insert(k.end(), kinks_.begin(), kinks_.end());
  if (kind_ == ProfileKind::Custom) k.push_back(s_max_);
  return k;
}

double Profile::deriv_l2() const {
  switch (kind_) {
    case ProfileKind::L: return std::abs(scale_);
    case ProfileKind::Sampled: {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < s_.size(); ++i) {
        const double d = (psi_[i + 1] - psi_[i]) / (s_[i + 1] - s_[i]);
        acc += d * d * (s_[i + 1] - s_[i]);
      }
      return std::abs(scale_) * std::sqrt(acc);
    }
    case ProfileKind::Custom: {
      const auto br = kinks();
      const auto r = quad::integrate([this](double y) { const double d = dfn_(y); return d * d; }, br,
                                     {.rel_tol = 1e-12, .abs_tol = 1e-300, .max_panels = 20000});
      return std::abs(scale_) * std::sqrt(r.value);
    }
  }
  return 0.0;
}

double Profile::l2_exp_norm() const {
  auto br = kinks();
  if (br.back() < s_max_) br.push_back(s_max_);
  const auto r = quad::integrate([this](double y) { const double p = (*this)(y); return p * p * std::exp(-4.0 * y); },
                                 br, {.rel_tol = 1e-12, .abs_tol = 1e-300, .max_panels = 20000});
  const double tail = (*this)(s_max_);
  return std::sqrt(r.value + tail * tail * std::exp(-4.0 * s_max_) / 4.0);
}

Profile Profile::scaled(double c) const {
  Profile p = *this;
  p.scale_ *= c;
  return p;
}

Profile profile_L() { return Profile::L(); }

Profile profile_psi2() {
  const double k = 1.0 / std::sqrt(9.0 / 8.0);
  return Profile::custom(
      "psi2", [k](double y) { const double m = std::min(y, 1.0); return k * m * std::sqrt(m); },
      [k](double y) { return y < 1.0 ? 1.5 * k * std::sqrt(y) : 0.0; }, {1.0}, 10.0);
}

Profile profile_sqrt_min() {
  return Profile::custom(
      "sqrt_min", [](double y) { return std::sqrt(y) * std::min(y, 1.0); },
      [](double y) { return y < 1.0 ? 1.5 * std::sqrt(y) : 0.5 / std::sqrt(y); }, {1.0}, 10.0);
}

HolderCertificate holder_certificate(const Profile& psi, std::size_t pairs, unsigned seed) {
  HolderCertificate c;
  c.pairs = pairs;
  const double d = psi.deriv_l2();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, psi.s_max() + 1.0);
  for (std::size_t k = 0; k < pairs; ++k) {
    const double s = u(rng), t = u(rng);
    const double diff = std::abs(psi(s) - psi(t));
    if (diff == 0.0) continue;
    const double ratio = d > 0.0 && s != t ? diff / (d * std::sqrt(std::abs(s - t))) : INFINITY;
    c.worst_ratio = std::max(c.worst_ratio, ratio);
  }
  c.pass = c.worst_ratio <= 1.0 + 1e-12;
  return c;
}

bool profile_invariants_hold(const Profile& psi, std::size_t pairs, unsigned seed) {
  for (double s : {-10.0, -1.0, -1e-9, 0.0})
    if (psi(s) != 0.0) return false;
  if (!std::isfinite(psi.deriv_l2())) return false;
  return holder_certificate(psi, pairs, seed).pass;
}

// --------------------------------------------------------------- mollifiers

Mollifier::Mollifier(MollifierKind k) : kind_(k) {
  const auto r = quad::integrate([this](double t) { return shape(t); }, -1.0, 1.0,
                                 {.rel_tol = 1e-15, .abs_tol = 1e-300, .max_panels = 20000});
  c_ = 1.0 / r.value;
}

Mollifier Mollifier::standard() {
  static const Mollifier m(MollifierKind::Standard);
  return m;
}

Mollifier Mollifier::asymmetric() {
  static const Mollifier m(MollifierKind::Asymmetric);
  return m;
}

double Mollifier::shape(double t) const {
  if (!(std::abs(t) < 1.0)) return 0.0;
  const double b = std::exp(-1.0 / (1.0 - t * t));
  return kind_ == MollifierKind::Standard ? b : (1.0 + 0.8 * t) * b;
}

double Mollifier::operator()(double t) const { return c_ * shape(t); }

double Mollifier::moment_abs(double p) const {
  const double br[3] = {-1.0, 0.0, 1.0};
  return quad::integrate([this, p](double t) { return (*this)(t) * std::pow(std::abs(t), p); }, br,
                         {.rel_tol = 1e-13, .abs_tol = 1e-300, .max_panels = 20000})
      .value;
}

double mollified_value(const Profile& psi, double alpha, const Mollifier& rho, double y) {
  const double eps = 1.0 / alpha;
  if (y + eps <= 0.0) return 0.0;
  const auto kinks = psi.kinks();
  if (y - eps >= kinks.back() && psi.kind() != ProfileKind::Sampled) return psi(y);
  // Pieces in t where y - t/alpha crosses a kink of psi.
  std::vector<double> br{-1.0};
  for (auto it = kinks.rbegin(); it != kinks.rend(); ++it) {
    const double t = alpha * (y - *it);
    if (t > -1.0 && t < 1.0 && t > br.back()) br.push_back(t);
  }
  br.push_back(1.0);
  const auto& gl = quad::gauss_legendre(48);
  double acc = 0.0, mass = 0.0;
  for (std::size_t k = 0; k + 1 < br.size(); ++k) {
    const double a = br[k], b = br[k + 1];
    const double hw = 0.5 * (b - a);
    if (hw <= 0.0) continue;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = a + hw * (gl.nodes[q] + 1.0);
      const double w = hw * gl.weights[q] * rho(t);
      acc += w * psi(y - t * eps);
      mass += w;
    }
  }
  // Dividing by the discrete mass makes constants exact.
  return mass > 0.0 ? acc / mass : 0.0;
}

SampledFunction mollify_profile(const Profile& psi, double alpha, const Mollifier& rho, std::size_t points) {
  if (!(alpha >= 1.0)) throw ValidationError("mollify_profile: alpha must be >= 1");
  if (points < 2) throw ValidationError("mollify_profile: need at least 2 points");
  SampledFunction out;
  const double a = -1.0 / alpha, b = psi.s_max();
  out.y.resize(points);
  out.values.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double y = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
    out.y[i] = y;
    out.values[i] = mollified_value(psi, alpha, rho, y);
  }
  return out;
}

// ------------------------------------------------------------------ bubbles

void BubbleSpec::validate() const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("bubble: alpha must be >= 1");
}

LogGrid bubble_grid(const std::vector<double>& alphas, bool pure, const BubbleGridOptions& opt) {
  if (alphas.empty()) throw ValidationError("bubble grid: no scales");
  GradedSpec spec;
  spec.s_min = opt.s_min;
  spec.h_max = opt.h_max;
  spec.growth = opt.growth;
  double amax = 0.0;
  spec.windows.push_back({-1.5, 1.5, opt.h_fine});
  for (double a : alphas) {
    if (!(a >= 1.0)) throw ValidationError("bubble grid: alpha must be >= 1");
    amax = std::max(amax, a);
    spec.windows.push_back({a - 3.0, a + 3.0, opt.h_fine});
    spec.windows.push_back({0.0, 1.5 * a, a / opt.n_bubble});
  }
  spec.s_max = 1.5 * amax + opt.tail;
  if (pure) {
    spec.breakpoints.push_back(0.0);
    for (double a : alphas) spec.breakpoints.push_back(a);
    std::sort(spec.breakpoints.begin(), spec.breakpoints.end());
    spec.breakpoints.erase(std::unique(spec.breakpoints.begin(), spec.breakpoints.end()), spec.breakpoints.end());
  }
  return make_graded_grid(spec);
}

double bubble_value(const BubbleSpec& spec, double s) {
  const double amp = std::sqrt(spec.alpha / (8.0 * kPi2));
  const double y = s / spec.alpha;
  return amp * (spec.mollified ? mollified_value(spec.profile, spec.alpha, spec.mollifier, y) : spec.profile(y));
}

LogRadialFunction make_bubble(const BubbleSpec& spec, const LogGrid& grid) {
  spec.validate();
  LogRadialFunction f = sample(grid, [&spec](double s) { return bubble_value(spec, s); });
  f.name = spec.mollified ? "g" : "h";
  f.closed_form = "bubble profile=" + spec.profile.name() + " alpha=" + fmt(spec.alpha) +
                  (spec.mollified ? std::string(" mollifier=") + spec.mollifier.name() : std::string(" pure"));
  return f;
}

LogRadialFunction make_bubble(const BubbleSpec& spec) {
  spec.validate();
  return make_bubble(spec, bubble_grid({spec.alpha}, !spec.mollified));
}

// ---------------------------------------------------------------- f_alpha

Falpha::Falpha(double a, double w) : alpha(a), width(w) {
  if (!(a > 0.0) || !(w > 0.0)) throw ValidationError("f_alpha: alpha and width must be positive");
}

double Falpha::A() const { return std::sqrt(alpha / (8.0 * kPi2)); }
double Falpha::B() const { return 1.0 / std::sqrt(32.0 * kPi2 * alpha); }
double Falpha::c() const { return 1.0 / std::sqrt(8.0 * kPi2 * alpha); }
double Falpha::s_outer() const { return -std::log1p(width); }

namespace {

struct Chi {
  double chi, d1, d2;
};

// chi(tau) = exp(1 - 1/(1 - tau^2)) and its first two derivatives; 0 for |tau| >= 1.
Chi chi_of(double tau) {
  const double q = 1.0 - tau * tau;
  if (q <= 2e-3) return {0.0, 0.0, 0.0};
  const double x = std::exp(1.0 - 1.0 / q);
  const double q2 = q * q;
  return {x, x * (-2.0 * tau / q2), x * (4.0 * tau * tau - (2.0 + 6.0 * tau * tau) * q) / (q2 * q2)};
}

}  // namespace

// eta = -c w zeta(t/w) with zeta(tau) = tau (1 - tau) chi(tau); zeta'(0) = 1.
double Falpha::eta(double r) const {
  const double t = r - 1.0;
  if (t < 0.0 || t >= width) return 0.0;
  const double tau = t / width;
  return -c() * t * (1.0 - tau) * chi_of(tau).chi;
}

double Falpha::eta_r(double r) const {
  const double t = r - 1.0;
  if (t < 0.0 || t >= width) return 0.0;
  const double tau = t / width;
  const Chi x = chi_of(tau);
  return -c() * ((1.0 - 2.0 * tau) * x.chi + tau * (1.0 - tau) * x.d1);
}

double Falpha::eta_rr(double r) const {
  const double t = r - 1.0;
  if (t < 0.0 || t >= width) return 0.0;
  const double tau = t / width;
  const Chi x = chi_of(tau);
  return -(c() / width) * (-2.0 * x.chi + 2.0 * (1.0 - 2.0 * tau) * x.d1 + tau * (1.0 - tau) * x.d2);
}

double Falpha::v(double s, bool left) const {
  if (s > alpha || (s == alpha && !left)) return A() + B() * (1.0 - std::exp(2.0 * alpha - 2.0 * s));
  if (s > 0.0 || (s == 0.0 && !left)) return s * c();
  return eta(std::exp(-s));
}

double Falpha::d1(double s, bool left) const {
  if (s > alpha || (s == alpha && !left)) return 2.0 * B() * std::exp(2.0 * alpha - 2.0 * s);
  if (s > 0.0 || (s == 0.0 && !left)) return c();
  const double r = std::exp(-s);
  return -r * eta_r(r);
}

double Falpha::d2(double s, bool left) const {
  if (s > alpha || (s == alpha && !left)) return -4.0 * B() * std::exp(2.0 * alpha - 2.0 * s);
  if (s > 0.0 || (s == 0.0 && !left)) return 0.0;
  const double r = std::exp(-s);
  return r * eta_r(r) + r * r * eta_rr(r);
}

double Falpha::lap_s(double s, bool left) const { return d2(s, left) - 2.0 * d1(s, left); }

LogRadialFunction make_eta(double alpha, double width, double h) {
  if (!(alpha >= 2.0)) throw ValidationError("eta: alpha must be >= 2");
  const Falpha fa(alpha, width);
  const double a = fa.s_outer();
  const auto n = static_cast<std::size_t>(std::ceil(-a / h)) + 1;
  LogRadialFunction f = sample(LogGrid::uniform(a, 0.0, std::max<std::size_t>(n, 8)),
                               [&fa](double s) { return fa.eta(std::exp(-s)); }, "eta");
  f.closed_form = "eta alpha=" + fmt(alpha) + " width=" + fmt(width);
  return f;
}

LogRadialFunction make_falpha(double alpha, const FalphaOptions& opt) {
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) throw ValidationError("f_alpha: alpha must be >= 2");
  const Falpha fa(alpha, opt.width);
  GradedSpec spec;
  spec.s_min = fa.s_outer() - 0.5;
  spec.s_max = alpha + opt.tail;
  spec.h_max = opt.h_max;
  spec.growth = opt.growth;
  spec.windows = {{fa.s_outer(), 0.0, opt.h_fine}, {alpha - 0.5, alpha + 2.0, opt.h_core}};
  spec.breakpoints = {0.0, alpha};
  LogGrid grid;
  try {
    grid = make_graded_grid(spec);
  } catch (const ValidationError& e) {
    throw ValidationError("f_alpha: grid cannot resolve alpha=" + fmt(alpha) + ": " + e.what());
  }
  LogRadialFunction f = sample(
      grid, [&fa](double s) { return fa.v(s); }, "f_alpha", [&fa](double s) { return fa.v(s, true); });
  f.closed_form = "falpha alpha=" + fmt(alpha) + " width=" + fmt(opt.width);

  for (double b : {0.0, alpha}) {
    const double jv = std::abs(fa.v(b, true) - fa.v(b));
    const double jd = std::abs(fa.d1(b, true) - fa.d1(b));
    if (jv > 1e-10 * std::max(1.0, std::abs(fa.v(b))) || jd > 1e-10 * std::max(fa.c(), std::abs(fa.d1(b))))
      throw NumericalError("f_alpha: pieces do not match at s=" + fmt(b));
  }
  return f;
}

// ------------------------------------------------------------ closed forms

EtaConstants eta_constants(double width) {
  if (width == 1.0) return {0.011490506381183693, 0.15285568633262622, 4.4761354781178747};
  return eta_constants_quadrature(width);
}

EtaConstants eta_constants_quadrature(double width) {
  const Falpha fa(1.0, width);
  const quad::AdaptiveOptions o{.rel_tol = 1e-13, .abs_tol = 1e-300, .max_panels = 50000};
  const double a = 1.0, b = 1.0 + width;
  const double br[5] = {a, a + 0.25 * width, a + 0.5 * width, a + 0.75 * width, b};
  const double l2 = quad::integrate([&](double r) { const double e = fa.eta(r); return e * e * r * r * r; }, br, o).value;
  const double gr = quad::integrate([&](double r) { const double e = fa.eta_r(r); return e * e * r * r * r; }, br, o).value;
  const double lp = quad::integrate(
                        [&](double r) {
                          const double d = fa.eta_rr(r) + 3.0 * fa.eta_r(r) / r;
                          return d * d * r * r * r;
                        },
                        br, o)
                        .value;
  return {kTwoPi2 * l2, kTwoPi2 * gr, kTwoPi2 * lp};
}

AppendixForms appendix_closed_forms(double alpha, double width) {
  if (!(alpha >= 2.0)) throw ValidationError("appendix forms: alpha must be >= 2");
  const Falpha fa(alpha, width);
  const EtaConstants k = eta_constants(width);
  const double a = fa.A(), b = fa.B();
  const double e4 = std::exp(-4.0 * alpha), e2 = std::exp(-2.0 * alpha);
  AppendixForms f{};
  f.alpha = alpha;
  f.l2_I = kTwoPi2 * e4 * ((a + b) * (a + b) / 4.0 - (a + b) * b / 3.0 + b * b / 8.0);
  f.l2_I_bound = (alpha / (8.0 * kPi2) + 1.0 / (32.0 * kPi2 * alpha) + 1.0 / (8.0 * kPi2)) * kPi2 * e4 / 2.0;
  f.l2_II = (1.0 / (4.0 * alpha)) * (-alpha * alpha * e4 / 4.0 - alpha * e4 / 8.0 + (1.0 - e4) / 32.0);
  f.l2_III = k.l2 / alpha;
  f.l2_sq = f.l2_I + f.l2_II + f.l2_III;
  f.grad_inner = e2 / (24.0 * alpha);
  f.grad_annulus = (1.0 - e2) / (8.0 * alpha);
  f.grad_eta = k.grad / alpha;
  f.grad_sq = f.grad_inner + f.grad_annulus + f.grad_eta;
  f.lap_inner = 1.0 / alpha;
  f.lap_annulus = 1.0;
  f.lap_eta = k.lap / alpha;
  f.lap_sq = f.lap_inner + f.lap_annulus + f.lap_eta;
  return f;
}

std::pair<double, double> lemma_add1_integrals(double alpha) {
  if (!(alpha >= 2.0)) throw ValidationError("lemma add1: alpha must be >= 2");
  const quad::AdaptiveOptions o{.rel_tol = 1e-13, .abs_tol = 1e-300, .max_panels = 50000};
  // Both integrands live in O(1) layers at t = 0 and t = alpha: geometric
  // breaks from each end so no panel is too coarse to see them.
  std::vector<double> br{0.0, alpha};
  for (double d = 0.125; d < 0.5 * alpha; d *= 2.0) {
    br.push_back(d);
    br.push_back(alpha - d);
  }
  br.push_back(0.5 * alpha);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  const double i5 = quad::integrate([alpha](double t) { return std::exp(-5.0 * t + 4.0 * t * t / alpha); }, br, o).value;
  const double i4 = quad::integrate([alpha](double t) { return std::exp(-4.0 * t + 4.0 * t * t / alpha); }, br, o).value;
  return {i5, i4};
}

OrliczLimit profile_orlicz_limit(const Profile& psi) {
  const double smax = psi.s_max();
  std::vector<double> ys;
  for (int k = -12; k < 0; ++k) ys.push_back(std::pow(10.0, k) * smax);
  const int n = 4000;
  for (int i = 1; i <= n; ++i) ys.push_back(smax * i / n);
  for (double k : psi.kinks())
    if (k > 0.0) ys.push_back(k);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  auto ratio = [&psi](double y) { return std::abs(psi(y)) / std::sqrt(y); };
  std::size_t best = 0;
  double bv = ratio(ys[0]);
  for (std::size_t i = 1; i < ys.size(); ++i) {
    const double r = ratio(ys[i]);
    if (r > bv) {
      bv = r;
      best = i;
    }
  }
  // Golden-section refinement between the neighbours of the discrete argmax.
  double a = ys[best > 0 ? best - 1 : 0], b = ys[std::min(best + 1, ys.size() - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = ratio(x1), f2 = ratio(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, b); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = ratio(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = ratio(x1);
    }
  }
  double arg = ys[best];
  if (std::max(f1, f2) > bv) {
    bv = std::max(f1, f2);
    arg = f1 >= f2 ? x1 : x2;
  }
  return {bv * orlicz_limit_constant(), arg, bv};
}

}  // namespace o4d::bubbles
