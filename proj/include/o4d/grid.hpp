#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace o4d {

enum class GridPolicy { Uniform, Graded };

/// Nodes in the log-radius s = -log r, ascending.
///
/// A node may appear twice in a row.  Such a pair marks a breakpoint: the
/// grid is split into independent segments there, and a function sampled on
/// it carries separate left and right values (a kink or jump in v).
struct LogGrid {
  std::vector<double> s;
  GridPolicy policy = GridPolicy::Uniform;

  std::size_t size() const { return s.size(); }
  double s_min() const { return s.front(); }
  double s_max() const { return s.back(); }

  /// Half-open index ranges [first, last) of the smooth segments.
  std::vector<std::pair<std::size_t, std::size_t>> segments() const;

  /// Nondecreasing, finite, no value repeated more than twice.
  void validate() const;
  /// Stronger gate used before computing norms: at least 8 nodes and
  /// s_min < 0 < s_max.
  void validate_for_analysis() const;

  static LogGrid uniform(double s_min, double s_max, std::size_t n);
};

/// Local refinement request: spacing h inside [a, b], growing linearly
/// with the distance to the window outside it.
struct GridWindow {
  double a, b, h;
};

struct GradedSpec {
  double s_min = -4.0;
  double s_max = 20.0;
  double h_max = 0.5;
  double growth = 0.05;
  std::vector<GridWindow> windows;
  std::vector<double> breakpoints;  ///< strictly inside (s_min, s_max)
  std::size_t min_segment_nodes = 5;
};

/// Node budget for generated grids; `ORLICZ4D_NODE_BUDGET` overrides the default.
std::size_t node_budget();

/// Builds a graded grid.  Throws ValidationError if the budget is exceeded.
LogGrid make_graded_grid(const GradedSpec& spec);

}  // namespace o4d
