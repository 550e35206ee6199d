#include "o4d/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "o4d/errors.hpp"

namespace o4d {

std::vector<std::pair<std::size_t, std::size_t>> LogGrid::segments() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t first = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == s[i - 1]) {
      out.emplace_back(first, i);
      first = i;
    }
  }
  if (!s.empty()) out.emplace_back(first, s.size());
  return out;
}

void LogGrid::validate() const {
  if (s.empty()) throw ValidationError("grid has no nodes");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i])) throw ValidationError("grid node " + std::to_string(i) + " is not finite");
    if (i == 0) continue;
    if (s[i] < s[i - 1])
      throw ValidationError("grid nodes not increasing at index " + std::to_string(i));
    if (i >= 2 && s[i] == s[i - 1] && s[i - 1] == s[i - 2])
      throw ValidationError("grid node repeated three times at index " + std::to_string(i));
  }
}

void LogGrid::validate_for_analysis() const {
  validate();
  if (s.size() < 8) throw ValidationError("grid needs at least 8 nodes, has " + std::to_string(s.size()));
  if (!(s_min() < 0.0 && s_max() > 0.0))
    throw ValidationError("grid span must contain s = 0 in its interior");
}

LogGrid LogGrid::uniform(double s_min, double s_max, std::size_t n) {
  if (n < 2 || !(s_max > s_min)) throw ValidationError("uniform grid needs n >= 2 and s_max > s_min");
  LogGrid g;
  g.policy = GridPolicy::Uniform;
  g.s.resize(n);
  const double h = (s_max - s_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g.s[i] = s_min + h * static_cast<double>(i);
  g.s.back() = s_max;
  return g;
}

std::size_t node_budget() {
  if (const char* env = std::getenv("ORLICZ4D_NODE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v >= 16) return static_cast<std::size_t>(v);
  }
  return 400000;
}

namespace {

double spacing(const GradedSpec& spec, double s) {
  double h = spec.h_max;
  for (const auto& w : spec.windows) {
    const double d = s < w.a ? w.a - s : (s > w.b ? s - w.b : 0.0);
    h = std::min(h, w.h + spec.growth * d);
  }
  return h;
}

}  // namespace

LogGrid make_graded_grid(const GradedSpec& spec) {
  if (!(spec.s_max > spec.s_min)) throw ValidationError("graded grid: s_max must exceed s_min");
  if (!(spec.h_max > 0.0) || spec.growth < 0.0) throw ValidationError("graded grid: bad spacing parameters");
  for (const auto& w : spec.windows)
    if (!(w.h > 0.0)) throw ValidationError("graded grid: window spacing must be positive");

  std::vector<double> cuts{spec.s_min};
  std::vector<double> bps = spec.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double b : bps) {
    if (!(b > spec.s_min && b < spec.s_max)) throw ValidationError("graded grid: breakpoint outside span");
    if (b > cuts.back()) cuts.push_back(b);
  }
  cuts.push_back(spec.s_max);

  const std::size_t budget = node_budget();
  LogGrid g;
  g.policy = GridPolicy::Graded;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    std::vector<double> pts{a};
    while (pts.back() < b) {
      // Midpoint-evaluated step keeps the spacing ratio smooth.
      const double x = pts.back();
      const double h0 = spacing(spec, x);
      pts.push_back(x + spacing(spec, x + 0.5 * h0));
      if (g.s.size() + pts.size() > budget)
        throw ValidationError("graded grid exceeds node budget of " + std::to_string(budget));
    }
    // Stretch the march so its last node lands on b.
    const double over = pts.back();
    if (pts.size() >= 3 && (over - b) > 0.5 * (over - pts[pts.size() - 2])) pts.pop_back();
    const double scale = (b - a) / (pts.back() - a);
    for (double& p : pts) p = a + (p - a) * scale;
    pts.back() = b;
    if (pts.size() < spec.min_segment_nodes) {
      const std::size_t n = spec.min_segment_nodes;
      pts.resize(n);
      for (std::size_t i = 0; i < n; ++i) pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
      pts.back() = b;
    }
    // Segment boundaries appear twice (left/right copies).
    g.s.insert(g.s.end(), pts.begin(), pts.end());
  }
  if (g.s.size() > budget) throw ValidationError("graded grid exceeds node budget of " + std::to_string(budget));
  return g;
}

}  // namespace o4d
