#include "o4d/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "o4d/spline.hpp"

namespace o4d::decompose {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kTie = 1e-12;

bool ge_tie(double a, double b, double scale) { return a >= b - kTie * std::max(1.0, scale); }

// Orlicz norms of several members, computed concurrently; each call is pure.
std::vector<double> orlicz_norms(const std::vector<const LogRadialFunction*>& fs, const orlicz::OrliczConfig& cfg) {
  std::vector<std::future<double>> jobs;
  jobs.reserve(fs.size());
  for (const auto* f : fs) jobs.push_back(std::async(std::launch::async, [f, &cfg] { return orlicz::orlicz_norm(*f, cfg); }));
  std::vector<double> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

double invr_grad_sq(const LogRadialFunction& f) {
  const double n = radial::norm(f, radial::NormKind::INVR_GRAD);
  return n * n;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

void SequenceFamily::validate() const {
  if (members.size() < 3) throw ValidationError("family needs at least 3 members");
  if (indices.size() != members.size()) throw ValidationError("family: indices and members differ in length");
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (!(indices[i] > indices[i - 1])) throw ValidationError("family: indices must be strictly increasing");
  for (std::size_t i = 0; i < members.size(); ++i) {
    try {
      members[i].validate();
      members[i].grid.validate_for_analysis();
    } catch (const ValidationError& e) {
      throw ValidationError("members[" + std::to_string(i) + "]: " + e.what());
    }
  }
}

double estimate_A0(const SequenceFamily& family, const orlicz::OrliczConfig& cfg) {
  family.validate();
  const std::size_t n = family.size();
  const std::size_t first = n - (n + 1) / 2;
  std::vector<const LogRadialFunction*> tail;
  for (std::size_t i = first; i < n; ++i) tail.push_back(&family.members[i]);
  double a = 0.0;
  for (double v : orlicz_norms(tail, cfg)) a = std::max(a, v);
  return a;
}

ScaleDetection detect_scale_detail(const LogRadialFunction& member, double A0) {
  if (!(A0 > 0.0)) throw ValidationError("detect_scale: A0 must be positive");
  const Spline sp = radial::spline_of(member);
  const auto& s = member.grid.s;
  if (!(s.back() > 0.0)) throw ValidationError("detect_scale: grid has no s > 0");
  auto W = [&](double x) {
    const double q = sp(x) / A0;
    return 4.0 * q * q - 3.0 * x;
  };

  ScaleDetection out;
  const double s0 = std::max(0.0, s.front());
  out.W0 = W(s0);
  // Candidates: s0 and every node at or beyond it.
  std::vector<double> xs{s0};
  std::vector<double> ws{out.W0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] <= s0) continue;
    const double q = member.values[i] / A0;
    xs.push_back(s[i]);
    ws.push_back(4.0 * q * q - 3.0 * s[i]);
  }
  const double wmax = *std::max_element(ws.begin(), ws.end());
  std::size_t k = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (ge_tie(ws[i], wmax, wmax)) k = i;  // last one wins: ties toward larger s
  if (k == 0 || !(wmax > out.W0 + kTie * std::max(1.0, std::abs(wmax))))
    throw NoConcentration("no concentration: W(s) <= W(0) for all s >= 0");

  // Golden-section refinement on the neighbouring nodes.
  double a = xs[k - 1];
  double b = k + 1 < xs.size() ? xs[k + 1] : xs[k];
  while (k + 1 < xs.size() && b == xs[k]) b = xs[std::min(k + 2, xs.size() - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = W(x1), f2 = W(x2);
  while (b - a > 1e-5) {
    if (ge_tie(f2, f1, f1)) {  // tie: move toward larger s
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = W(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = W(x1);
    }
  }
  const double xr = 0.5 * (a + b);
  const double wr = W(xr);
  if (ge_tie(ws[k], wr, wr)) {
    out.s = xs[k];
    out.W = ws[k];
  } else {
    out.s = xr;
    out.W = wr;
    out.refined = true;
  }
  return out;
}

double detect_scale(const LogRadialFunction& member, double A0) { return detect_scale_detail(member, A0).s; }

namespace {

std::vector<double> profile_samples(const LogRadialFunction& f, double alpha, const std::vector<double>& y,
                                    bool surrogate) {
  const Spline sp = radial::spline_of(f);
  const double amp = std::sqrt(8.0 * kPi2 / alpha);
  const double lo = f.grid.s_min(), hi = f.grid.s_max();
  std::vector<double> psi(y.size(), 0.0);
  for (std::size_t k = 1; k < y.size(); ++k) {
    const double s = std::clamp(alpha * y[k], lo, hi);
    psi[k] = amp * sp(s);
  }
  if (surrogate && y.size() >= 4) {
    const double d1 = psi[1] - psi[0], d2 = psi[2] - psi[1], d3 = psi[3] - psi[2];
    double e = 2.0 * d2 - d3;
    if (e * d2 < 0.0) e = 0.0;
    if (e * d1 > 0.0 && std::abs(e) > std::abs(d1)) e = d1;
    const double shift = e - d1;
    for (std::size_t k = 1; k < psi.size(); ++k) psi[k] += shift;
  }
  return psi;
}

}  // namespace

Extraction extract_profile(const SequenceFamily& family, const ScaleSeq& scales, const ExtractOptions& opt) {
  if (scales.size() != family.size()) throw ValidationError("extract_profile: one scale per member required");
  if (!(opt.dy > 0.0)) throw ValidationError("extract_profile: dy must be positive");
  const std::size_t N = family.size();
  const double aN = scales[N - 1];
  if (!(aN > 0.0)) throw ValidationError("extract_profile: scales must be positive");
  const double y_max = std::min(opt.y_max, family.members[N - 1].grid.s_max() / aN);
  const auto K = static_cast<std::size_t>(std::floor(y_max / opt.dy + 1e-9));
  if (K < 3) throw ValidationError("extract_profile: y-grid too short");
  std::vector<double> y(K + 1);
  for (std::size_t k = 0; k <= K; ++k) y[k] = opt.dy * static_cast<double>(k);

  const auto last = profile_samples(family.members[N - 1], aN, y, opt.weak_limit_surrogate);
  const auto prev = profile_samples(family.members[N - 2], scales[N - 2], y, opt.weak_limit_surrogate);
  Extraction ex;
  double peak = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    ex.delta_psi = std::max(ex.delta_psi, std::abs(last[k] - prev[k]));
    peak = std::max(peak, std::abs(last[k]));
  }
  ex.stable = ex.delta_psi <= opt.stable_tol * std::max(peak, 1e-300);
  ex.profile = bubbles::Profile::sampled(y, last, "extracted");
  return ex;
}

SequenceFamily subtract_bubble(const SequenceFamily& family, const ScaleSeq& scales, const bubbles::Profile& psi,
                               const bubbles::Mollifier& rho, bool mollified) {
  if (scales.size() != family.size()) throw ValidationError("subtract_bubble: one scale per member required");
  SequenceFamily out = family;
  std::vector<std::future<LogRadialFunction>> jobs;
  for (std::size_t i = 0; i < family.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] {
      bubbles::BubbleSpec spec{scales[i], psi, rho, mollified};
      const LogRadialFunction g = bubbles::make_bubble(spec, family.members[i].grid);
      LogRadialFunction r = axpy(family.members[i], -1.0, g);
      r.name = "r";
      return r;
    }));
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) out.members[i] = jobs[i].get();
  return out;
}

double energy_ledger(const SequenceFamily& family, const SequenceFamily& remainder, const bubbles::Profile& psi) {
  if (family.size() != remainder.size() || family.size() == 0)
    throw ValidationError("energy_ledger: families must have the same index set");
  const double u2 = invr_grad_sq(family.members.back());
  const double r2 = invr_grad_sq(remainder.members.back());
  const double p = psi.deriv_l2();
  const double num = std::abs(r2 - u2 + 0.25 * p * p);
  if (u2 == 0.0) return num;
  return num / u2;
}

Orthogonality orthogonality_check(const ScaleSeq& a, const ScaleSeq& b, double d_min) {
  if (a.size() != b.size()) throw ValidationError("orthogonality_check: scale sequences differ in length");
  Orthogonality o;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(b[i] > 0.0)) throw ValidationError("orthogonality_check: scales must be positive");
    o.d.push_back(std::abs(std::log(a[i] / b[i])));
  }
  const std::size_t n = o.d.size();
  bool increasing = n >= 3;
  for (std::size_t i = n >= 3 ? n - 2 : n; i < n; ++i) increasing = increasing && o.d[i] > o.d[i - 1];
  o.orthogonal = increasing && o.d.back() >= d_min;
  return o;
}

DecompositionResult decompose(const SequenceFamily& family, const DecomposeConfig& cfg) {
  family.validate();
  cfg.orlicz.validate();
  if (cfg.max_profiles < 0) throw ValidationError("max_profiles must be nonnegative");
  if (!(cfg.stop_frac >= 0.0 && cfg.stop_frac < 1.0)) throw ValidationError("stop_frac must lie in [0, 1)");

  DecompositionResult res;
  const std::size_t N = family.size();

  for (double R : {std::exp(1.0), std::exp(2.0), std::exp(3.0)}) {
    TailCheck t{R, {}};
    for (const auto& m : family.members) t.l2_squared.push_back(radial::l2_squared_outside(m, R));
    res.hyp3.push_back(std::move(t));
  }
  {
    const double total = std::pow(radial::norm(family.members.back(), radial::NormKind::L2), 2);
    const double last = res.hyp3.back().l2_squared.back();
    res.hyp3_pass = last <= 1e-3 * total + 1e-12;
    if (!res.hyp3_pass) res.notes.push_back("tail mass beyond e^3 is not small: compactness at infinity doubtful");
  }
  double lap_sup = 0.0;
  for (std::size_t i = N - (N + 1) / 2; i < N; ++i)
    lap_sup = std::max(lap_sup, radial::norm(family.members[i], radial::NormKind::LAP));
  const double C_cor2 = lap_sup / std::sqrt(8.0 * kPi2);

  const double A0 = estimate_A0(family, cfg.orlicz);
  res.remainder = family;
  if (A0 == 0.0) {
    res.stop_reason = "A0 = 0";
    return res;
  }
  res.A_history.push_back(A0);
  const double tol = 2.0 * cfg.orlicz.lambda_tol;

  SequenceFamily current = family;
  double A = A0;
  while (static_cast<int>(res.components.size()) < cfg.max_profiles) {
    if (A <= cfg.stop_frac * A0) {
      res.stop_reason = "A_l <= stop_frac * A0";
      break;
    }
    ScaleSeq scales(N);
    try {
      for (std::size_t i = 0; i < N; ++i) scales[i] = detect_scale(current.members[i], A);
    } catch (const NoConcentration& e) {
      res.stop_reason = std::string("no concentration detected: ") + e.what();
      break;
    }
    for (std::size_t i = 1; i < N; ++i)
      if (scales[i] < scales[i - 1]) res.notes.push_back("detected scales not nondecreasing in n");
    if (scales.back() < cfg.scale_min) {
      res.stop_reason = "last-index scale below scale_min";
      break;
    }

    const Extraction ex = extract_profile(current, scales, cfg.extract);
    SequenceFamily next = subtract_bubble(current, scales, ex.profile, cfg.mollifier, true);
    res.ledger.push_back(energy_ledger(current, next, ex.profile));

    // Merge into the closest non-orthogonal component, if any.
    int target = -1;
    double dbest = INFINITY;
    for (std::size_t j = 0; j < res.components.size(); ++j) {
      const auto o = orthogonality_check(scales, res.components[j].scales, cfg.d_min);
      if (!o.orthogonal && o.d.back() < dbest) {
        dbest = o.d.back();
        target = static_cast<int>(j);
      }
    }
    {
      Cor2Check c{};
      const double aN = scales.back();
      const double v = std::abs(radial::eval(current.members.back(), std::min(aN, current.members.back().grid.s_max())));
      c.lower_ratio = v / (0.5 * std::sqrt(3.0) * A * std::sqrt(aN));
      c.upper_ratio = C_cor2 > 0.0 ? v / (C_cor2 * std::sqrt(aN)) : 0.0;
      res.cor2.push_back(c);
    }
    if (target >= 0) {
      auto& comp = res.components[static_cast<std::size_t>(target)];
      const auto& a = comp.profile;
      const auto& b = ex.profile;
      // Both profiles live on the same y-grid spacing; sum them node by node.
      const auto& ya = a.samples_s();
      const auto& yb = b.samples_s();
      const auto& ys = ya.size() >= yb.size() ? ya : yb;
      std::vector<double> sum(ys.size());
      for (std::size_t k = 0; k < ys.size(); ++k) sum[k] = a(ys[k]) + b(ys[k]);
      comp.profile = bubbles::Profile::sampled(ys, sum, "extracted");
      comp.deriv_l2 = comp.profile.deriv_l2();
      comp.merges += 1;
      res.notes.push_back("scale merged into component " + std::to_string(target + 1) +
                          " (d = " + num(dbest) + ")");
    } else {
      Component c;
      c.scales = scales;
      c.profile = ex.profile;
      c.deriv_l2 = ex.profile.deriv_l2();
      c.delta_psi = ex.delta_psi;
      c.stable = ex.stable;
      c.A_before = A;
      res.components.push_back(std::move(c));
    }
    if (!ex.stable) res.notes.push_back("profile not stabilizing (delta_psi = " + num(ex.delta_psi) + ")");

    current = std::move(next);
    const double An = estimate_A0(current, cfg.orlicz);
    res.A_history.push_back(An);
    if (An > A * (1.0 + tol)) {
      res.contracting = false;
      res.stop_reason = "A_history increased: algorithm not contracting";
      break;
    }
    A = An;
  }
  if (res.stop_reason.empty()) {
    res.stop_reason = A <= cfg.stop_frac * A0 ? "A_l <= stop_frac * A0" : "max_profiles reached";
  }
  res.remainder = std::move(current);

  const std::size_t m = res.components.size();
  res.orthogonality_matrix.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      res.orthogonality_matrix[j][k] =
          std::abs(std::log(res.components[j].scales.back() / res.components[k].scales.back()));
  return res;
}

SequenceFamily synthesize_family(const std::vector<long>& indices, const std::vector<BubbleTerm>& terms,
                                 const bubbles::Mollifier& rho) {
  SequenceFamily fam;
  fam.indices = indices;
  std::ostringstream desc;
  for (std::size_t t = 0; t < terms.size(); ++t)
    desc << (t ? " + " : "") << terms[t].amplitude << "*" << (terms[t].mollified ? "g(" : "h(")
         << terms[t].profile.name() << ", " << terms[t].coeff << "*n^" << terms[t].power << ")";
  fam.meta["generator"] = desc.str();
  fam.members.resize(indices.size());
  std::vector<std::future<LogRadialFunction>> jobs;
  for (long n : indices) {
    jobs.push_back(std::async(std::launch::async, [&terms, &rho, n] {
      std::vector<double> alphas;
      bool pure = false;
      for (const auto& t : terms) {
        alphas.push_back(t.coeff * std::pow(static_cast<double>(n), t.power));
        pure = pure || !t.mollified;
      }
      const LogGrid grid = bubbles::bubble_grid(alphas, pure);
      LogRadialFunction u;
      u.grid = grid;
      u.values.assign(grid.size(), 0.0);
      for (std::size_t t = 0; t < terms.size(); ++t) {
        bubbles::BubbleSpec spec{alphas[t], terms[t].profile, rho, terms[t].mollified};
        const auto g = bubbles::make_bubble(spec, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) u.values[i] += terms[t].amplitude * g.values[i];
      }
      u.name = "u_" + std::to_string(n);
      return u;
    }));
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) fam.members[i] = jobs[i].get();
  return fam;
}

SequenceFamily two_bubble_family(const std::vector<long>& indices) {
  return synthesize_family(indices, {BubbleTerm{bubbles::profile_L(), 1.0, 1.0, 1.0, true},
                                     BubbleTerm{bubbles::profile_psi2(), 2.0, 1.0, 1.0, true}});
}

}  // namespace o4d::decompose
