#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "o4d/orlicz.hpp"

namespace o4d::cli {

/// Parsed command line.  Fields unused by a command keep their defaults.
struct RunConfig {
  std::string command;
  std::string in;
  std::string out;  ///< empty: stdout
  double alpha = 0.0;
  std::vector<double> alphas;  ///< lemma-add1 sweep
  double width = 1.0;
  std::string profile = "L";
  bool mollified = true;
  std::string mollifier = "standard";
  std::string family = "two-bubble";
  std::vector<long> indices{8, 16, 32, 64};
  std::string which = "all";
  orlicz::OrliczConfig orlicz;
  double beta = 1.0;
  std::string phi = "gaussian";
  std::string suite = "all";
  unsigned seed = 7;
  int max_profiles = 5;
  double stop_frac = 0.1;
};

/// Executes a parsed command.  Returns 0 on success, 1 when a verification
/// suite has failing rows, 2 on invalid input, 3 on numerical failure.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and executes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace o4d::cli
