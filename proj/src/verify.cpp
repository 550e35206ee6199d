#include "o4d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <thread>

#include "o4d/bubbles.hpp"
#include "o4d/decompose.hpp"
#include "o4d/errors.hpp"
#include "o4d/orlicz.hpp"
#include "o4d/quadrature.hpp"
#include "o4d/spline.hpp"

namespace o4d::verify {

namespace {

constexpr double kPi = std::numbers::pi;

template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<std::future<T>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  std::vector<T> out;
  out.reserve(n);
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void add_decreasing(std::vector<Check>& out, const std::string& label, const std::vector<double>& alphas,
                    const std::vector<double>& errors, const std::string& provenance) {
  for (std::size_t k = 1; k < errors.size(); ++k)
    out.push_back(make_check(label + " decreasing alpha=" + num(alphas[k - 1]) + "->" + num(alphas[k]), errors[k],
                             errors[k - 1], 0.0, "<", provenance));
}

// ------------------------------------------------------------ inequalities

std::vector<Check> inequalities_suite(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<LogRadialFunction> corpus;
  corpus.reserve(200);
  for (int i = 0; i < 200; ++i) corpus.push_back(random_radial_function(rng));

  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  auto reports = parallel_map<std::vector<radial::InequalityReport>>(workers, [&](std::size_t w) {
    std::vector<radial::InequalityReport> part;
    for (std::size_t i = w; i < corpus.size(); i += workers) part.push_back(radial::check_radial_inequalities(corpus[i]));
    return part;
  });

  std::vector<Check> lem4, pointwise;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& r = reports[i % workers][i / workers];
    lem4.push_back(make_check("lem4 #" + std::to_string(i), r.invr_grad / r.half_lap, 1.0, r.lap_slack, "<=",
                              "property"));
    pointwise.push_back(make_check("est.rad #" + std::to_string(i), r.pointwise_max, 1.0, r.pointwise_slack, "<=",
                                   "property"));
  }
  lem4.insert(lem4.end(), pointwise.begin(), pointwise.end());
  return lem4;
}

// ------------------------------------------------------------------ falpha

std::vector<Check> falpha_suite() {
  std::vector<Check> out;
  const double limit = bubbles::orlicz_limit_constant();
  const double kappa = 1.0;
  const std::vector<double> ladder{25, 50, 100};
  auto lambdas = parallel_map<double>(ladder.size(), [&](std::size_t i) {
    return orlicz::orlicz_norm(bubbles::make_falpha(ladder[i]), orlicz::OrliczConfig{});
  });
  std::vector<double> errors;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double a = ladder[i];
    errors.push_back(std::abs(lambdas[i] - limit));
    const double bound = 1.0 / (32 * kPi * kPi + (8 * kPi * kPi / a) * std::log(2 * kappa / (kPi * kPi) + std::exp(-4 * a)));
    out.push_back(make_check("orlicz_norm^2 lower bracket alpha=" + num(a), lambdas[i] * lambdas[i], bound, 0.0, ">=",
                             "proof_bound"));
  }
  out.push_back(make_check("orlicz_norm alpha=100", lambdas[2], limit, 0.002, "abs<=", "limit"));
  add_decreasing(out, "|orlicz_norm - 1/sqrt(32 pi^2)|", ladder, errors, "limit");

  for (double a : {5.0, 10.0, 25.0, 50.0}) {
    const auto f = bubbles::make_falpha(a);
    const auto n = radial::norms(f);
    const auto cf = bubbles::appendix_closed_forms(a);
    out.push_back(make_check("||f||_L2^2 alpha=" + num(a), n.l2 * n.l2, cf.l2_sq, 1e-4, "rel<=", "closed_form"));
    out.push_back(make_check("||grad f||^2 alpha=" + num(a), n.grad * n.grad, cf.grad_sq, 1e-4, "rel<=", "closed_form"));
    out.push_back(make_check("||lap f||^2 alpha=" + num(a), n.lap * n.lap, cf.lap_sq, 1e-4, "rel<=", "closed_form"));
    const double c_eta = bubbles::eta_constants(1.0).lap;
    out.push_back(make_check("||lap f||^2 >= 1+1/alpha alpha=" + num(a), n.lap * n.lap, 1 + 1 / a, 1e-4, ">=",
                             "closed_form"));
    out.push_back(make_check("||lap f||^2 <= 1+1/alpha+1.01 c_eta/alpha alpha=" + num(a), n.lap * n.lap,
                             1 + 1 / a + 1.01 * c_eta / a, 1e-4, "<=", "closed_form"));

    const bubbles::Falpha fa(a);
    for (double s : {0.0, a}) {
      const double scale = std::max(std::abs(fa.A()), 1.0);
      out.push_back(make_check("v jump at s=" + num(s) + " alpha=" + num(a), std::abs(fa.v(s, true) - fa.v(s)) / scale,
                               0.0, 1e-10, "abs<=", "construction"));
      out.push_back(make_check("v' jump at s=" + num(s) + " alpha=" + num(a),
                               std::abs(fa.d1(s, true) - fa.d1(s)) / std::max(std::abs(fa.d1(s)), fa.c()), 0.0, 1e-10,
                               "abs<=", "construction"));
    }
  }
  const bubbles::Falpha f10(10);
  out.push_back(make_check("eta'(1) alpha=10", f10.eta_r(1.0), -1 / std::sqrt(80 * kPi * kPi), 1e-12, "abs<=",
                           "closed_form"));
  return out;
}

// ----------------------------------------------------------- concentration

std::vector<Check> concentration_suite() {
  std::vector<Check> out;
  const std::vector<double> ladder{20, 40, 80};
  const auto phi = orlicz::RadialTest::gaussian();
  auto reps = parallel_map<orlicz::ConcentrationReport>(
      ladder.size(), [&](std::size_t i) { return orlicz::pair_concentration(ladder[i], phi); });
  const double pi2 = kPi * kPi;
  const double exp_target = pi2 / 16 * (std::exp(4.0) + 3);
  const double inner_target = pi2 / 16 * (std::exp(4.0) - 5);
  const double annulus_target = pi2 / 2;

  std::vector<double> e_lap, e_exp, e_in, e_ann;
  for (const auto& r : reps) {
    e_lap.push_back(std::abs(r.pairing_lap - r.phi_at_zero) / r.phi_at_zero);
    e_exp.push_back(std::abs(r.pairing_exp - exp_target * r.phi_at_zero) / (exp_target * r.phi_at_zero));
    e_in.push_back(std::abs(r.split_exp[0] - inner_target * r.phi_at_zero) / (inner_target * r.phi_at_zero));
    e_ann.push_back(std::abs(r.split_exp[1] - annulus_target * r.phi_at_zero) / (annulus_target * r.phi_at_zero));
    const double lap_sum = r.split_lap[0] + r.split_lap[1] + r.split_lap[2];
    const double exp_sum = r.split_exp[0] + r.split_exp[1] + r.split_exp[2];
    out.push_back(make_check("lap splits sum alpha=" + num(r.alpha), lap_sum, r.pairing_lap, 1e-10, "rel<=",
                             "construction"));
    out.push_back(make_check("exp splits sum alpha=" + num(r.alpha), exp_sum, r.pairing_exp, 1e-10, "rel<=",
                             "construction"));
  }
  const auto& r80 = reps.back();
  out.push_back(make_check("int |lap f|^2 phi alpha=80", r80.pairing_lap, r80.phi_at_zero, 0.03, "rel<=", "limit"));
  out.push_back(make_check("int (e^{32pi^2 f^2}-1) phi alpha=80", r80.pairing_exp, exp_target * r80.phi_at_zero, 0.10,
                           "rel<=", "limit"));
  out.push_back(make_check("inner region alpha=80", r80.split_exp[0], inner_target * r80.phi_at_zero, 0.10, "rel<=",
                           "limit"));
  out.push_back(make_check("annulus region alpha=80", r80.split_exp[1], annulus_target * r80.phi_at_zero, 0.10, "rel<=",
                           "limit"));
  add_decreasing(out, "lap pairing error", ladder, e_lap, "limit");
  add_decreasing(out, "exp pairing error", ladder, e_exp, "limit");
  add_decreasing(out, "inner region error", ladder, e_in, "limit");
  add_decreasing(out, "annulus region error", ladder, e_ann, "limit");

  const auto one = orlicz::pair_concentration(50, orlicz::RadialTest::plateau());
  out.push_back(make_check("int |lap f|^2 (phi=1 near 0) alpha=50", one.pairing_lap, 1.0, 0.03, "rel<=", "limit"));
  const auto zero = orlicz::pair_concentration(50, orlicz::RadialTest::zero());
  out.push_back(make_check("phi=0 pairings", std::abs(zero.pairing_lap) + std::abs(zero.pairing_exp), 0.0, 0.0,
                           "abs<=", "closed_form"));

  const std::vector<double> add1{25, 50, 100, 200};
  std::vector<double> e4, e3;
  for (double a : add1) {
    const auto [i4, i3] = bubbles::lemma_add1_integrals(a);
    e4.push_back(std::abs(i4 - 0.2));
    e3.push_back(std::abs(i3 - 0.5));
    if (a == 100) {
      out.push_back(make_check("lemma add1 r^4 alpha=100", i4, 0.2, 0.02, "abs<=", "limit"));
      out.push_back(make_check("lemma add1 r^3 alpha=100", i3, 0.5, 0.02, "abs<=", "limit"));
      out.push_back(make_check("lemma add1 r^4 oracle alpha=100", i4, 0.2006, 1e-4, "abs<=", "oracle"));
      out.push_back(make_check("lemma add1 r^3 oracle alpha=100", i3, 0.5025, 1e-4, "abs<=", "oracle"));
    }
  }
  add_decreasing(out, "lemma add1 r^4 error", add1, e4, "limit");
  add_decreasing(out, "lemma add1 r^3 error", add1, e3, "limit");
  return out;
}

// ----------------------------------------------------------------- bubbles

std::vector<Check> bubbles_suite(unsigned seed) {
  std::vector<Check> out;
  const double limit = bubbles::orlicz_limit_constant();
  for (const auto& rho : {bubbles::Mollifier::standard(), bubbles::Mollifier::asymmetric()}) {
    const auto mass = quad::integrate([&](double t) { return rho(t); }, -1.0, 1.0);
    out.push_back(make_check(std::string("mollifier mass ") + rho.name(), mass.value, 1.0, 1e-12, "abs<=",
                             "construction"));
  }
  out.push_back(make_check("profile limit L", bubbles::profile_orlicz_limit(bubbles::profile_L()).value, limit, 1e-9,
                           "abs<=", "closed_form"));
  out.push_back(make_check("profile limit 2L", bubbles::profile_orlicz_limit(bubbles::profile_L().scaled(2)).value,
                           2 * limit, 1e-9, "abs<=", "closed_form"));
  out.push_back(make_check("profile limit psi2", bubbles::profile_orlicz_limit(bubbles::profile_psi2()).value,
                           limit * std::sqrt(8.0 / 9.0), 1e-9, "abs<=", "closed_form"));
  out.push_back(make_check("profile limit sqrt(s) min(s,1)",
                           bubbles::profile_orlicz_limit(bubbles::profile_sqrt_min()).value, limit, 1e-6, "abs<=",
                           "closed_form"));
  for (const auto& p : {bubbles::profile_L(), bubbles::profile_psi2()}) {
    const auto cert = bubbles::holder_certificate(p, 1000, seed);
    out.push_back(make_check("holder-1/2 certificate " + p.name(), cert.worst_ratio, 1.0, 1e-12, "<=", "property"));
  }
  {
    double sup = 0.0;
    const auto rho = bubbles::Mollifier::standard();
    for (int i = 0; i <= 2000; ++i) {
      const double y = -0.05 + 1.2 * i / 2000.0;
      sup = std::max(sup, std::abs(bubbles::mollified_value(bubbles::profile_L(), 100, rho, y) - bubbles::profile_L()(y)));
    }
    out.push_back(make_check("sup |L*rho - L| alpha=100", sup, 0.1, 0.0, "<=", "proof_bound"));
  }
  {
    bubbles::BubbleSpec pure{50, bubbles::profile_L(), bubbles::Mollifier::standard(), false};
    out.push_back(make_check("pure L-bubble v(alpha) alpha=50", bubbles::bubble_value(pure, 50),
                             std::sqrt(50 / (8 * kPi * kPi)), 1e-12, "abs<=", "closed_form"));
  }

  // Orlicz norms of g (mollified), h (pure) and g with the asymmetric bump.
  const std::vector<double> ladder{50, 100, 200};
  struct Job {
    double alpha;
    bool mollified;
    bool alt;
  };
  std::vector<Job> jobs;
  for (double a : ladder) {
    jobs.push_back({a, true, false});
    jobs.push_back({a, false, false});
    jobs.push_back({a, true, true});
  }
  auto lam = parallel_map<double>(jobs.size(), [&](std::size_t i) {
    const auto& j = jobs[i];
    bubbles::BubbleSpec spec{j.alpha, bubbles::profile_L(),
                             j.alt ? bubbles::Mollifier::asymmetric() : bubbles::Mollifier::standard(), j.mollified};
    return orlicz::orlicz_norm(bubbles::make_bubble(spec));
  });
  std::vector<double> errors;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const double g = lam[3 * k], h = lam[3 * k + 1], alt = lam[3 * k + 2];
    errors.push_back(std::abs(g - limit));
    if (ladder[k] >= 100) {
      out.push_back(make_check("|g - h| / g alpha=" + num(ladder[k]), std::abs(g - h) / g, 0.0, 0.01, "abs<=", "limit"));
    }
    if (ladder[k] == 200) {
      out.push_back(make_check("orlicz_norm g alpha=200", g, limit, 0.02, "rel<=", "limit"));
      out.push_back(make_check("mollifier independence alpha=200", std::abs(g - alt) / g, 0.0, 0.01, "abs<=", "limit"));
    }
  }
  add_decreasing(out, "|orlicz_norm g - limit|", ladder, errors, "limit");

  {
    bubbles::BubbleSpec spec{100, bubbles::profile_L(), bubbles::Mollifier::standard(), true};
    const double ig = radial::norm(bubbles::make_bubble(spec), radial::NormKind::INVR_GRAD);
    out.push_back(make_check("||(1/r) d_r g||^2 alpha=100", ig * ig, 0.25, 0.02, "rel<=", "limit"));
  }
  return out;
}

// ----------------------------------------------------------- decomposition

std::vector<Check> decomposition_suite(unsigned seed) {
  std::vector<Check> out;
  const auto fam = decompose::two_bubble_family();
  auto conv = std::async(std::launch::async, [] {
    const std::vector<long> idx{32};
    const auto both = decompose::two_bubble_family(idx);
    const auto g1 = decompose::synthesize_family(idx, {decompose::BubbleTerm{bubbles::profile_L(), 1, 1, 1, true}});
    const auto g2 = decompose::synthesize_family(idx, {decompose::BubbleTerm{bubbles::profile_psi2(), 2, 1, 1, true}});
    const double s = orlicz::orlicz_norm(both.members[0]);
    const double m = std::max(orlicz::orlicz_norm(g1.members[0]), orlicz::orlicz_norm(g2.members[0]));
    return std::pair{s, m};
  });
  auto single = std::async(std::launch::async, [] {
    const auto f = decompose::synthesize_family({8, 16, 32, 64}, {decompose::BubbleTerm{}});
    return decompose::decompose(f);
  });
  auto pure_a0 = std::async(std::launch::async, [] {
    const auto f = decompose::synthesize_family({8, 16, 32, 64},
                                                {decompose::BubbleTerm{bubbles::profile_L(), 1, 1, 1, false}});
    return decompose::estimate_A0(f);
  });

  const auto res = decompose::decompose(fam);
  out.push_back(make_check("two-bubble components", static_cast<double>(res.components.size()), 2.0, 0.0, "abs<=",
                           "construction"));
  const double n = static_cast<double>(fam.indices.back());
  const std::vector<double> expected{n, n * n};
  for (const auto& c : res.components) {
    const double last = c.scales.back();
    const double want = std::abs(last - expected[0]) < std::abs(last - expected[1]) ? expected[0] : expected[1];
    out.push_back(make_check("last-index scale near " + num(want), last, want, want / 64.0, "abs<=", "construction"));
    out.push_back(make_check("||psi'|| >= 0.9 sqrt(6 pi^2) A scale=" + num(want), c.deriv_l2,
                             0.9 * std::sqrt(6 * kPi * kPi) * c.A_before, 0.0, ">=", "proof_bound"));
    const auto cert = bubbles::holder_certificate(c.profile, 1000, seed);
    out.push_back(make_check("extracted profile holder-1/2 scale=" + num(want), cert.worst_ratio, 1.0, 1e-9, "<=",
                             "property"));
  }
  for (std::size_t i = 0; i < res.orthogonality_matrix.size(); ++i)
    for (std::size_t j = i + 1; j < res.orthogonality_matrix[i].size(); ++j)
      out.push_back(make_check("orthogonality (" + std::to_string(i) + "," + std::to_string(j) + ")",
                               res.orthogonality_matrix[i][j], std::log(8.0), 0.0, ">=", "construction"));
  for (std::size_t k = 0; k < res.ledger.size(); ++k)
    out.push_back(make_check("ledger residual step " + std::to_string(k + 1), res.ledger[k], 0.0, 0.05, "abs<=",
                             "proof_bound"));
  if (!res.A_history.empty()) {
    out.push_back(make_check("final A <= 0.1 A0", res.A_history.back(), 0.1 * res.A_history.front(), 0.0, "<=",
                             "construction"));
    for (std::size_t k = 1; k < res.A_history.size(); ++k)
      out.push_back(make_check("A_history step " + std::to_string(k), res.A_history[k], res.A_history[k - 1], 2e-9,
                               "<=", "property"));
  }
  {
    double sum = 0.0;
    for (const auto& c : res.components) sum += 0.25 * c.deriv_l2 * c.deriv_l2;
    const double ig = radial::norm(fam.members.back(), radial::NormKind::INVR_GRAD);
    out.push_back(make_check("ledger telescoping", sum, ig * ig, 0.05, "<=", "proof_bound"));
  }

  const auto [sum_norm, max_norm] = conv.get();
  out.push_back(make_check("conv.prop n=32", sum_norm, max_norm, 0.05, "rel<=", "limit"));

  const auto one = single.get();
  out.push_back(make_check("single-bubble components", static_cast<double>(one.components.size()), 1.0, 0.0, "abs<=",
                           "construction"));
  if (!one.A_history.empty())
    out.push_back(make_check("single-bubble final A <= 0.1 A0", one.A_history.back(), 0.1 * one.A_history.front(), 0.0,
                             "<=", "construction"));

  out.push_back(make_check("estimate_A0 pure L family", pure_a0.get(), bubbles::orlicz_limit_constant(), 0.05, "rel<=",
                           "limit"));

  const double A0 = res.A_history.empty() ? decompose::estimate_A0(fam) : res.A_history.front();
  for (double c : {0.1, 3.0, 10.0}) {
    const auto& u = fam.members.back();
    const double s1 = decompose::detect_scale(u, A0);
    const double s2 = decompose::detect_scale(scaled(u, c), c * A0);
    out.push_back(make_check("detect_scale invariance c=" + num(c), s2, s1, 0.0, "abs<=", "property"));
  }
  return out;
}

}  // namespace

Check make_check(std::string name, double value, double target, double tolerance, std::string relation,
                 std::string provenance) {
  Check c{std::move(name), value, target, tolerance, std::move(relation), std::move(provenance), false};
  if (!std::isfinite(value)) return c;
  if (c.relation == "abs<=")
    c.pass = std::abs(value - target) <= tolerance;
  else if (c.relation == "rel<=")
    c.pass = std::abs(value - target) <= tolerance * std::abs(target);
  else if (c.relation == "<=")
    c.pass = value <= target + tolerance * std::abs(target);
  else if (c.relation == ">=")
    c.pass = value >= target - tolerance * std::abs(target);
  else if (c.relation == "<")
    c.pass = value < target;
  else
    throw ValidationError("unknown check relation '" + c.relation + "'");
  return c;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"inequalities", "falpha", "concentration", "bubbles", "decomposition",
                                              "all"};
  return names;
}

Report run_suite(const std::string& name, unsigned seed) {
  Report rep;
  rep.suite = name;
  rep.seed = seed;
  auto append = [&](std::vector<Check> v) { rep.checks.insert(rep.checks.end(), v.begin(), v.end()); };
  const bool all = name == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw ValidationError("unknown suite '" + name + "'");
  if (all || name == "inequalities") append(inequalities_suite(seed));
  if (all || name == "falpha") append(falpha_suite());
  if (all || name == "concentration") append(concentration_suite());
  if (all || name == "bubbles") append(bubbles_suite(seed));
  if (all || name == "decomposition") append(decomposition_suite(seed));
  return rep;
}

io::json to_json(const Report& r) {
  io::json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  j["passed"] = r.passed();
  j["total"] = r.checks.size();
  io::json rows = io::json::array();
  for (const auto& c : r.checks)
    rows.push_back({{"name", c.name},
                    {"value", c.value},
                    {"target", c.target},
                    {"tolerance", c.tolerance},
                    {"relation", c.relation},
                    {"provenance", c.provenance},
                    {"pass", c.pass}});
  j["checks"] = std::move(rows);
  return j;
}

LogRadialFunction random_radial_function(std::mt19937_64& rng, std::size_t nodes) {
  constexpr int kKnots = 9;
  constexpr double h = 0.5;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> y(kKnots, 0.0);
  for (int i = 0; i + 1 < kKnots; ++i) y[static_cast<std::size_t>(i)] = unif(rng);

  // Clamped spline: zero slope at both ends.
  std::vector<double> lo(kKnots, h / 6), di(kKnots, 2 * h / 3), up(kKnots, h / 6), rhs(kKnots);
  di.front() = di.back() = h / 3;
  rhs.front() = (y[1] - y[0]) / h;
  rhs.back() = -(y[kKnots - 1] - y[kKnots - 2]) / h;
  for (int i = 1; i + 1 < kKnots; ++i) {
    const auto k = static_cast<std::size_t>(i);
    rhs[k] = (y[k + 1] - 2 * y[k] + y[k - 1]) / h;
  }
  solve_tridiagonal(lo, di, up, rhs);
  const std::vector<double> M = rhs;

  auto u = [y, M](double r) {
    if (r >= 4.0) return 0.0;
    const auto i = static_cast<std::size_t>(std::min(7.0, std::floor(r / h)));
    const double a = (h * static_cast<double>(i + 1) - r) / h, b = 1 - a;
    return a * y[i] + b * y[i + 1] + ((a * a * a - a) * M[i] + (b * b * b - b) * M[i + 1]) * h * h / 6;
  };
  const LogGrid grid = LogGrid::uniform(-std::log(4.0), 9.0, nodes);
  return sample(grid, [&](double s) { return u(std::exp(-s)); }, "random clamped spline");
}

}  // namespace o4d::verify
