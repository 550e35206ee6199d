#pragma once

#include <random>
#include <string>
#include <vector>

#include "o4d/json_io.hpp"
#include "o4d/radial.hpp"

namespace o4d::verify {

/// One measured quantity against its target.
///
/// relation is one of "abs<=" (|value - target| <= tolerance),
/// "rel<=" (|value - target| <= tolerance |target|), "<=" and ">="
/// (value against target with relative slack tolerance), "<" (strict, used
/// for decreasing error ladders).
struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string relation;
  std::string provenance;  ///< closed form, limit, proof bound, oracle, property, construction
  bool pass = false;
};

Check make_check(std::string name, double value, double target, double tolerance, std::string relation,
                 std::string provenance);

struct Report {
  std::string suite;
  unsigned seed = 0;
  std::vector<Check> checks;
  bool pass() const;
  std::size_t passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws ValidationError for an unknown suite name.
Report run_suite(const std::string& name, unsigned seed);

io::json to_json(const Report& r);

/// Random smooth radial function supported in r <= 4: a clamped cubic spline
/// in r on knots 0, 0.5, ..., 4 with u(4) = u'(4) = u'(0) = 0 and uniform
/// random knot values in [-1, 1].
LogRadialFunction random_radial_function(std::mt19937_64& rng, std::size_t nodes = 2000);

}  // namespace o4d::verify
