#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "o4d/radial.hpp"

namespace o4d::bubbles {

/// 1 / sqrt(32 pi^2), the Orlicz-norm limit of f_alpha.
double orlicz_limit_constant();

// ---------------------------------------------------------------- profiles

enum class ProfileKind { L, Custom, Sampled };

/// A function psi with psi = 0 on (-inf, 0] and psi' in L^2.
class Profile {
 public:
  using Fn = std::function<double(double)>;

  static Profile L();
  /// Closed form on [0, s_max]; constant beyond s_max.  `kinks` lists the
  /// points in (0, s_max] where psi' may jump.
  static Profile custom(std::string name, Fn psi, Fn dpsi, std::vector<double> kinks, double s_max = 10.0);
  /// Piecewise-linear data on s >= 0, constant after the last sample.
  static Profile sampled(std::vector<double> s, std::vector<double> psi, std::string name = "sampled");

  double operator()(double y) const;
  double deriv(double y) const;
  /// ||psi'||_{L^2(R)}.
  double deriv_l2() const;
  /// ||psi||_{L^2(e^{-4s} ds)}.
  double l2_exp_norm() const;
  /// Points in [0, s_max] where psi' may jump (always contains 0).
  std::vector<double> kinks() const;
  double s_max() const { return s_max_; }
  ProfileKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& samples_s() const { return s_; }
  const std::vector<double>& samples_psi() const { return psi_; }

  Profile scaled(double c) const;

 private:
  ProfileKind kind_ = ProfileKind::L;
  std::string name_ = "L";
  Fn fn_, dfn_;
  std::vector<double> kinks_;
  double s_max_ = 10.0;
  std::vector<double> s_, psi_;
  double scale_ = 1.0;
};

Profile profile_L();
/// min(s,1)^{3/2} / sqrt(9/8): unit ||psi'||, maximum of psi/sqrt(s) at s = 1.
Profile profile_psi2();
/// sqrt(s) * min(s,1): psi/sqrt(s) peaks on [1, inf); psi' is not square integrable.
Profile profile_sqrt_min();

struct HolderCertificate {
  std::size_t pairs = 0;
  double worst_ratio = 0.0;  ///< max |psi(s)-psi(t)| / (||psi'|| sqrt|s-t|)
  bool pass = true;
};
/// Checks |psi(s) - psi(t)| <= ||psi'|| sqrt|s - t| on random pairs in [-1, s_max + 1].
HolderCertificate holder_certificate(const Profile& psi, std::size_t pairs, unsigned seed);

/// Verifies psi(s <= 0) = 0, finite ||psi'|| and the Holder certificate.
bool profile_invariants_hold(const Profile& psi, std::size_t pairs = 1000, unsigned seed = 1);

// --------------------------------------------------------------- mollifiers

enum class MollifierKind { Standard, Asymmetric };

/// Normalized bump on [-1, 1].  Standard: c exp(-1/(1-t^2)).
/// Asymmetric: c (1 + 0.8 t) exp(-1/(1-t^2)).
class Mollifier {
 public:
  static Mollifier standard();
  static Mollifier asymmetric();

  double operator()(double t) const;
  double normalization() const { return c_; }
  MollifierKind kind() const { return kind_; }
  const char* name() const { return kind_ == MollifierKind::Standard ? "standard" : "asymmetric"; }
  /// int rho(t) |t|^p dt.
  double moment_abs(double p) const;

 private:
  explicit Mollifier(MollifierKind k);
  double shape(double t) const;
  MollifierKind kind_;
  double c_ = 1.0;
};

/// (psi * rho_alpha)(y) with rho_alpha(y) = alpha rho(alpha y).
double mollified_value(const Profile& psi, double alpha, const Mollifier& rho, double y);

struct SampledFunction {
  std::vector<double> y, values;
};
/// psi * rho_alpha on a uniform grid of [-1/alpha, psi.s_max()].
SampledFunction mollify_profile(const Profile& psi, double alpha, const Mollifier& rho, std::size_t points = 2001);

// ------------------------------------------------------------------ bubbles

struct BubbleSpec {
  double alpha = 1.0;
  Profile profile = Profile::L();
  Mollifier mollifier = Mollifier::standard();
  bool mollified = true;
  void validate() const;
};

struct BubbleGridOptions {
  double s_min = -3.5;
  double h_fine = 0.05;
  double n_bubble = 64.0;  ///< band spacing alpha / n_bubble on [0, 1.5 alpha]
  double tail = 8.0;       ///< s_max = 1.5 max(alpha) + tail
  double growth = 0.05;
  double h_max = 0.5;
};

/// Graded grid resolving bubbles at every listed scale.  Pure bubbles get
/// breakpoints at s = 0 and s = alpha (their kinks).
LogGrid bubble_grid(const std::vector<double>& alphas, bool pure, const BubbleGridOptions& opt = {});

/// v(s) = sqrt(alpha/8pi^2) (psi*rho_alpha)(s/alpha), or psi(s/alpha) if pure.
double bubble_value(const BubbleSpec& spec, double s);
LogRadialFunction make_bubble(const BubbleSpec& spec);
LogRadialFunction make_bubble(const BubbleSpec& spec, const LogGrid& grid);

// ---------------------------------------------------------------- f_alpha

/// Closed-form f_alpha and eta_alpha in the log radius.
///   s >= alpha:     A + B (1 - e^{2alpha - 2s})
///   0 <= s <= alpha: s / sqrt(8 pi^2 alpha)
///   s < 0:          eta_alpha(e^{-s})
/// with A = sqrt(alpha/8pi^2), B = 1/sqrt(32 pi^2 alpha) and
/// eta_alpha(r) = -(1/sqrt(8 pi^2 alpha)) t (1 - t/w) chi(t/w), t = r - 1,
/// chi(tau) = exp(1 - 1/(1-tau^2)).  eta(1) = 0 and eta'(1) = -1/sqrt(8 pi^2 alpha),
/// so f_alpha is C^1 across |x| = 1.
struct Falpha {
  double alpha;
  double width = 1.0;

  Falpha(double alpha, double width = 1.0);
  double A() const;
  double B() const;
  double c() const;  ///< 1/sqrt(8 pi^2 alpha)

  /// v, v', v'' in s.  At s = 0 and s = alpha the right-hand limits are returned
  /// unless `left` is set.
  double v(double s, bool left = false) const;
  double d1(double s, bool left = false) const;
  double d2(double s, bool left = false) const;
  /// v'' - 2v', i.e. e^{-2s} Delta u.
  double lap_s(double s, bool left = false) const;

  // eta in the radius r >= 1 together with d/dr and d^2/dr^2.
  double eta(double r) const;
  double eta_r(double r) const;
  double eta_rr(double r) const;

  double s_outer() const;  ///< -log(1 + width): where eta's support ends
};

/// eta on s in [-log(1+w), 0].
LogRadialFunction make_eta(double alpha, double width = 1.0, double h = 0.0005);

struct FalphaOptions {
  double width = 1.0;
  double h_fine = 0.00025;  ///< eta region
  double h_core = 0.002;   ///< around s = alpha
  double growth = 0.05;
  double h_max = 0.5;
  double tail = 12.0;
};

LogRadialFunction make_falpha(double alpha, const FalphaOptions& opt = {});

// ------------------------------------------------------------ closed forms

/// alpha * ||eta_alpha||^2 for the three norms, independent of alpha.
struct EtaConstants {
  double l2, grad, lap;
};
/// Frozen high-precision values for w = 1; other widths by quadrature.
EtaConstants eta_constants(double width);
EtaConstants eta_constants_quadrature(double width);

struct AppendixForms {
  double alpha;
  // squared L2 pieces: inner ball, annulus, outside the unit ball
  double l2_I, l2_I_bound, l2_II, l2_III, l2_sq;
  double grad_inner, grad_annulus, grad_eta, grad_sq;
  double lap_inner, lap_annulus, lap_eta, lap_sq;
};
AppendixForms appendix_closed_forms(double alpha, double width = 1.0);

/// Integrals over [0, alpha] of e^{-5t+4t^2/alpha} and e^{-4t+4t^2/alpha}.
std::pair<double, double> lemma_add1_integrals(double alpha);

struct OrliczLimit {
  double value;   ///< (1/sqrt(32 pi^2)) max psi/sqrt(s)
  double argmax;
  double ratio;   ///< max psi/sqrt(s)
};
OrliczLimit profile_orlicz_limit(const Profile& psi);

}  // namespace o4d::bubbles
