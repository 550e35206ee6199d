#include "o4d/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "o4d/errors.hpp"
#include "o4d/quadrature.hpp"

namespace o4d {

namespace {
constexpr double kTwoPi2 = 2.0 * std::numbers::pi * std::numbers::pi;
}

void LogRadialFunction::validate() const {
  grid.validate();
  if (values.size() != grid.size())
    throw ValidationError("function '" + name + "': " + std::to_string(values.size()) + " values for " +
                          std::to_string(grid.size()) + " nodes");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw ValidationError("function '" + name + "': value at node " + std::to_string(i) + " is not finite");
}

LogRadialFunction sample(const LogGrid& grid, const std::function<double(double)>& fn, std::string name,
                         const std::function<double(double)>& left) {
  LogRadialFunction f;
  f.name = std::move(name);
  f.grid = grid;
  f.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left_copy = i + 1 < grid.size() && grid.s[i + 1] == grid.s[i];
    f.values[i] = (left_copy && left) ? left(grid.s[i]) : fn(grid.s[i]);
  }
  return f;
}

LogRadialFunction scaled(const LogRadialFunction& f, double c) {
  LogRadialFunction g = f;
  for (double& v : g.values) v *= c;
  if (c != 1.0) g.closed_form.reset();
  return g;
}

LogRadialFunction resample(const LogRadialFunction& f, const LogGrid& grid, double outside_low) {
  const Spline sp = radial::spline_of(f);
  const double lo = f.grid.s_min(), hi = f.grid.s_max();
  const double last = f.values.back();
  LogRadialFunction g;
  g.name = f.name;
  g.grid = grid;
  g.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid.s[i];
    g.values[i] = s < lo ? outside_low : (s > hi ? last : sp(s));
  }
  return g;
}

LogRadialFunction axpy(const LogRadialFunction& a, double c, const LogRadialFunction& b) {
  LogRadialFunction out = a;
  out.closed_form.reset();
  if (b.grid.s == a.grid.s) {
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += c * b.values[i];
    return out;
  }
  const LogRadialFunction br = resample(b, a.grid);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += c * br.values[i];
  return out;
}

namespace radial {

LogRadialFunction from_radius_samples(std::span<const double> r, std::span<const double> u) {
  if (r.size() != u.size()) throw ValidationError("radius and value arrays differ in length");
  if (r.empty()) throw ValidationError("no radius samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i]))
      throw ValidationError("radius at index " + std::to_string(i) + " is not positive");
    if (!std::isfinite(u[i])) throw ValidationError("value at index " + std::to_string(i) + " is not finite");
  }
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), 0);
  // Ascending s means descending r.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (r[order[k]] == r[order[k - 1]]) throw ValidationError("duplicate radius " + std::to_string(r[order[k]]));
  bool increasing = true, decreasing = true;
  for (std::size_t i = 1; i < r.size(); ++i) {
    increasing = increasing && r[i] > r[i - 1];
    decreasing = decreasing && r[i] < r[i - 1];
  }
  if (!increasing && !decreasing) throw ValidationError("radii must be strictly monotone");

  LogRadialFunction f;
  f.grid.s.resize(r.size());
  f.values.resize(r.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    f.grid.s[k] = -std::log(r[order[k]]);
    f.values[k] = u[order[k]];
  }
  bool uniform = f.size() >= 3;
  for (std::size_t k = 2; uniform && k < f.size(); ++k) {
    const double h0 = f.grid.s[1] - f.grid.s[0];
    uniform = std::abs((f.grid.s[k] - f.grid.s[k - 1]) - h0) <= 1e-9 * std::abs(h0);
  }
  f.grid.policy = uniform ? GridPolicy::Uniform : GridPolicy::Graded;
  return f;
}

Spline spline_of(const LogRadialFunction& f) {
  f.validate();
  return Spline(f.grid.s, f.values);
}

double eval(const LogRadialFunction& f, double s) { return spline_of(f)(s); }

LogRadialFunction derivative(const LogRadialFunction& f, int order) {
  if (order != 1 && order != 2) throw ValidationError("derivative order must be 1 or 2");
  f.validate();
  LogRadialFunction d;
  d.name = f.name + (order == 1 ? "'" : "''");
  d.grid = f.grid;
  d.values.assign(f.size(), 0.0);
  const auto& s = f.grid.s;
  const auto& v = f.values;
  for (auto [first, last] : f.grid.segments()) {
    const std::size_t n = last - first;
    if (n < static_cast<std::size_t>(order + 3))
      throw ValidationError("derivative of order " + std::to_string(order) + " needs " +
                            std::to_string(order + 3) + " nodes per segment, segment at s=" +
                            std::to_string(s[first]) + " has " + std::to_string(n));
    for (std::size_t i = first; i < last; ++i) {
      std::size_t lo, cnt;
      if (i == first) {
        lo = first;
        cnt = order == 1 ? 3 : 4;
      } else if (i + 1 == last) {
        cnt = order == 1 ? 3 : 4;
        lo = last - cnt;
      } else {
        lo = i - 1;
        cnt = 3;
      }
      const std::span<const double> st(s.data() + lo, cnt);
      const auto w = quad::fd_weights(s[i], st, order);
      double acc = 0.0;
      for (std::size_t j = 0; j < cnt; ++j) acc += w[j] * v[lo + j];
      d.values[i] = acc;
    }
  }
  return d;
}

const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::L2: return "L2";
    case NormKind::GRAD: return "GRAD";
    case NormKind::INVR_GRAD: return "INVR_GRAD";
    case NormKind::LAP: return "LAP";
    case NormKind::H2_SUM: return "H2_SUM";
    case NormKind::SCHROEDINGER: return "SCHROEDINGER";
  }
  return "?";
}

NormKind norm_kind_from_string(const std::string& s) {
  for (auto k : {NormKind::L2, NormKind::GRAD, NormKind::INVR_GRAD, NormKind::LAP, NormKind::H2_SUM,
                 NormKind::SCHROEDINGER})
    if (s == to_string(k)) return k;
  throw ValidationError("unknown norm kind '" + s + "'");
}

double NormSet::get(NormKind k) const {
  switch (k) {
    case NormKind::L2: return l2;
    case NormKind::GRAD: return grad;
    case NormKind::INVR_GRAD: return invr_grad;
    case NormKind::LAP: return lap;
    case NormKind::H2_SUM: return h2_sum;
    case NormKind::SCHROEDINGER: return schroedinger;
  }
  return 0.0;
}

namespace {

// Visits Gauss-Legendre points of every nonempty cell: fn(cell, s, weight).
// Cells wider than 0.5 are split so the e^{-4s} weight stays resolved.
template <class Fn>
void for_each_point(const std::vector<double>& x, Fn&& fn) {
  const auto& gl = quad::gauss_legendre(8);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    if (h <= 0.0) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * h)));
    const double hp = h / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = x[i] + p * hp;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double s = a + 0.5 * hp * (gl.nodes[q] + 1.0);
        fn(i, s, 0.5 * hp * gl.weights[q]);
      }
    }
  }
}

}  // namespace

NormSet norms(const LogRadialFunction& f) {
  f.validate();
  NormSet out;
  bool all_zero = std::all_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; });
  if (all_zero) return out;
  const LogRadialFunction d1 = derivative(f, 1);
  const LogRadialFunction d2 = derivative(f, 2);
  const Spline sv(f.grid.s, f.values), s1(f.grid.s, d1.values), s2(f.grid.s, d2.values);
  double l2 = 0, gr = 0, ig = 0, lp = 0, sc = 0;
  for_each_point(f.grid.s, [&](std::size_t i, double s, double w) {
    const double v = sv.eval_cell(i, s), a = s1.eval_cell(i, s), b = s2.eval_cell(i, s);
    const double e2 = std::exp(-2.0 * s);
    const double lapv = b - 2.0 * a;
    const double t_l2 = e2 * e2 * v * v, t_gr = e2 * a * a, t_sc = (e2 * v - lapv) * (e2 * v - lapv);
    if (!std::isfinite(t_l2) || !std::isfinite(t_gr) || !std::isfinite(t_sc))
      throw NumericalError("norm integrand overflows near node " + std::to_string(i) + " (s=" +
                           std::to_string(f.grid.s[i]) + ")");
    l2 += w * t_l2;
    gr += w * t_gr;
    ig += w * a * a;
    lp += w * lapv * lapv;
    sc += w * t_sc;
  });
  out.l2 = std::sqrt(kTwoPi2 * l2);
  out.grad = std::sqrt(kTwoPi2 * gr);
  out.invr_grad = std::sqrt(kTwoPi2 * ig);
  out.lap = std::sqrt(kTwoPi2 * lp);
  out.schroedinger = std::sqrt(kTwoPi2 * sc);
  out.h2_sum = std::sqrt(out.l2 * out.l2 + out.grad * out.grad + out.lap * out.lap);
  return out;
}

double norm(const LogRadialFunction& f, NormKind kind) { return norms(f).get(kind); }

double integrate(const LogRadialFunction& f) {
  const Spline sv = spline_of(f);
  double acc = 0.0;
  for_each_point(f.grid.s, [&](std::size_t i, double s, double w) { acc += w * sv.eval_cell(i, s); });
  return acc;
}

double l2_squared_outside(const LogRadialFunction& f, double radius) {
  const double s_cut = -std::log(radius);
  const Spline sv = spline_of(f);
  const auto& x = f.grid.s;
  double acc = 0.0;
  if (s_cut <= x.front()) return 0.0;
  // Clip the cell containing s_cut.
  std::vector<double> xs;
  for (double s : x) {
    if (s >= s_cut) break;
    xs.push_back(s);
  }
  xs.push_back(std::min(s_cut, x.back()));
  const auto& gl = quad::gauss_legendre(8);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double h = xs[i + 1] - xs[i];
    if (h <= 0.0) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * h)));
    const double hp = h / panels;
    for (int p = 0; p < panels; ++p)
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double s = xs[i] + p * hp + 0.5 * hp * (gl.nodes[q] + 1.0);
        const double v = sv(s);
        acc += 0.5 * hp * gl.weights[q] * v * v * std::exp(-4.0 * s);
      }
  }
  return kTwoPi2 * acc;
}

namespace {

LogRadialFunction half_resolution(const LogRadialFunction& f) {
  LogRadialFunction g;
  g.grid.policy = f.grid.policy;
  for (auto [first, last] : f.grid.segments()) {
    for (std::size_t i = first; i < last; ++i) {
      const bool keep = (i - first) % 2 == 0 || i + 1 == last;
      if (!keep) continue;
      g.grid.s.push_back(f.grid.s[i]);
      g.values.push_back(f.values[i]);
    }
  }
  return g;
}

struct Measured {
  double invr_grad, half_lap, pw_max, pw_r;
};

Measured measure(const LogRadialFunction& f, double r_floor) {
  const NormSet n = norms(f);
  Measured m{n.invr_grad, 0.5 * n.lap, 0.0, 0.0};
  const double denom = n.l2 * n.grad;
  if (denom > 0.0) {
    const double s_cut = -std::log(r_floor);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double s = f.grid.s[i];
      if (s > s_cut) break;
      const double r = std::exp(-s);
      const double q = f.values[i] * f.values[i] * std::numbers::pi * std::numbers::pi * r * r * r / denom;
      if (q > m.pw_max) {
        m.pw_max = q;
        m.pw_r = r;
      }
    }
  }
  return m;
}

}  // namespace

InequalityReport check_radial_inequalities(const LogRadialFunction& f, double slack, double r_floor) {
  InequalityReport rep;
  const Measured m = measure(f, r_floor);
  rep.invr_grad = m.invr_grad;
  rep.half_lap = m.half_lap;
  rep.pointwise_max = m.pw_max;
  rep.pointwise_at_r = m.pw_r;

  double disc = 0.0;
  const LogRadialFunction coarse = half_resolution(f);
  bool coarse_ok = true;
  for (auto [a, b] : coarse.grid.segments()) coarse_ok = coarse_ok && (b - a) >= 5;
  if (coarse_ok && m.half_lap > 0.0) {
    const Measured c = measure(coarse, r_floor);
    // Second-order rules: the fine-grid error is about a third of the difference.
    disc = std::max(std::abs(c.invr_grad - m.invr_grad) / m.half_lap,
                    std::abs(c.half_lap - m.half_lap) / m.half_lap) / 3.0;
  }
  rep.discretization = disc;
  rep.lap_slack = slack + disc;
  rep.pointwise_slack = slack + disc;
  rep.lap_pass = rep.invr_grad <= rep.half_lap * (1.0 + rep.lap_slack);
  rep.pointwise_pass = rep.pointwise_max <= 1.0 + rep.pointwise_slack;
  return rep;
}

}  // namespace radial
}  // namespace o4d
