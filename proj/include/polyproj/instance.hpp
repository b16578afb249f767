#pragma once

#include <string>
#include <vector>

#include "polyproj/sets.hpp"

namespace polyproj {

/// A constraint list plus query points, as stored in instance files:
/// {"dim": n, "sets": [{"kind": "hyperplane"|"halfspace", "u": [...],
///  "eta": r}, ...], "points": [[...], ...]}
struct Instance {
  int dim = 0;
  std::vector<Constraint> sets;
  std::vector<Vector> points;
};

/// Throws InvalidArgument for malformed JSON or schema violations and
/// DimensionMismatch when a vector length differs from "dim".
Instance parse_instance(const std::string& json_text);
Instance read_instance(const std::string& path);

/// Serialises with every real printed to 17 significant digits.
std::string instance_to_json(const Instance& inst);

/// "%.17g", with non-finite values spelled as JSON null.
std::string format_real(double v);

}  // namespace polyproj
