#include "polyproj/tolerances.hpp"

#include <cstdlib>

namespace polyproj {

Tolerances default_tolerances() {
  Tolerances t;
  if (const char* env = std::getenv("POLYPROJ_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0) t.membership = v;
  }
  return t;
}

}  // namespace polyproj
