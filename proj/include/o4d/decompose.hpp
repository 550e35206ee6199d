#pragma once

#include <map>
#include <string>
#include <vector>

#include "o4d/bubbles.hpp"
#include "o4d/errors.hpp"
#include "o4d/orlicz.hpp"
#include "o4d/radial.hpp"

namespace o4d::decompose {

/// Raised by detect_scale when W(s) never exceeds W(0).
class NoConcentration : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct SequenceFamily {
  std::vector<long> indices;  ///< strictly increasing, at least 3
  std::vector<LogRadialFunction> members;
  std::map<std::string, std::string> meta;

  void validate() const;
  std::size_t size() const { return members.size(); }
};

using ScaleSeq = std::vector<double>;

/// limsup surrogate: max Orlicz norm over the last ceil(N/2) members.
double estimate_A0(const SequenceFamily& family, const orlicz::OrliczConfig& cfg = {});

struct ScaleDetection {
  double s = 0.0;
  double W = 0.0;
  double W0 = 0.0;       ///< W at s = 0
  bool refined = false;  ///< true if the returned point is off-grid
};

/// argmax over s >= 0 of W(s) = 4 |v(s)/A0|^2 - 3s, refined by golden-section
/// search; ties go to the larger s.  Throws NoConcentration if W <= W(0).
ScaleDetection detect_scale_detail(const LogRadialFunction& member, double A0);
double detect_scale(const LogRadialFunction& member, double A0);

struct ExtractOptions {
  double dy = 1.0 / 16.0;
  double y_max = 10.0;            ///< capped by s_max / alpha of the last member
  bool weak_limit_surrogate = true;
  double stable_tol = 0.1;        ///< delta_psi threshold relative to max |psi|
};

struct Extraction {
  bubbles::Profile profile = bubbles::Profile::L();
  double delta_psi = 0.0;  ///< sup |psi_{n_N} - psi_{n_{N-1}}| on the y-grid
  bool stable = true;
};

/// psi_n(y) = sqrt(8 pi^2 / alpha_n) v_n(alpha_n y) on a fixed y-grid.  The
/// returned profile is the one of the largest index.  With the surrogate on,
/// the first-cell increment is replaced by the linear extrapolation of the
/// next two (jumps there come from faster, already separated scales).
Extraction extract_profile(const SequenceFamily& family, const ScaleSeq& scales, const ExtractOptions& opt = {});

/// r_n = u_n - g_n with g_n the mollified bubble (alpha_n, psi, rho) on u_n's grid.
SequenceFamily subtract_bubble(const SequenceFamily& family, const ScaleSeq& scales, const bubbles::Profile& psi,
                               const bubbles::Mollifier& rho = bubbles::Mollifier::standard(), bool mollified = true);

/// | IG^2(r_N) - IG^2(u_N) + |psi'|^2 / 4 | / IG^2(u_N), IG = ||(1/r) d_r .||.
double energy_ledger(const SequenceFamily& family, const SequenceFamily& remainder, const bubbles::Profile& psi);

struct Orthogonality {
  std::vector<double> d;  ///< |log(a_n / b_n)|
  bool orthogonal = false;
};
Orthogonality orthogonality_check(const ScaleSeq& a, const ScaleSeq& b, double d_min = 1.5);

struct DecomposeConfig {
  orlicz::OrliczConfig orlicz;
  int max_profiles = 5;
  double stop_frac = 0.1;
  double d_min = 1.5;
  double scale_min = 1.0;
  ExtractOptions extract;
  bubbles::Mollifier mollifier = bubbles::Mollifier::standard();
};

struct Component {
  ScaleSeq scales;
  bubbles::Profile profile = bubbles::Profile::L();
  double deriv_l2 = 0.0;
  double delta_psi = 0.0;
  bool stable = true;
  int merges = 0;
  double A_before = 0.0;  ///< A_l used to detect it
};

struct TailCheck {
  double radius;
  std::vector<double> l2_squared;  ///< per index
};

struct Cor2Check {
  double lower_ratio;  ///< |v(alpha)| / (sqrt(3)/2 A sqrt(alpha)), >= 1 expected
  double upper_ratio;  ///< |v(alpha)| / (C sqrt(alpha)), <= 1 expected
};

struct DecompositionResult {
  std::vector<Component> components;
  std::vector<double> A_history;
  SequenceFamily remainder;
  std::vector<double> ledger;
  std::vector<std::vector<double>> orthogonality_matrix;
  std::vector<TailCheck> hyp3;
  bool hyp3_pass = true;
  std::vector<Cor2Check> cor2;
  std::string stop_reason;
  bool contracting = true;
  std::vector<std::string> notes;
};

DecompositionResult decompose(const SequenceFamily& family, const DecomposeConfig& cfg = {});

// ------------------------------------------------------------- synthesis

struct BubbleTerm {
  bubbles::Profile profile = bubbles::Profile::L();
  double power = 1.0;      ///< alpha_n = coeff * n^power
  double coeff = 1.0;
  double amplitude = 1.0;
  bool mollified = true;
};

/// Family of sums of bubbles, each member on a grid resolving all its scales.
SequenceFamily synthesize_family(const std::vector<long>& indices, const std::vector<BubbleTerm>& terms,
                                 const bubbles::Mollifier& rho = bubbles::Mollifier::standard());

/// L at alpha_n = n plus the normalized psi2 at alpha_n = n^2.
SequenceFamily two_bubble_family(const std::vector<long>& indices = {8, 16, 32, 64});

}  // namespace o4d::decompose
