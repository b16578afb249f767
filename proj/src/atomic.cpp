#include "polyproj/atomic.hpp"

#include "polyproj/error.hpp"

namespace polyproj {

Vector project_hyperplane(const Hyperplane& h, const Vector& x) {
  require_same_dim(h.u, x, "project_hyperplane");
  const double nn = h.u.squaredNorm();
  if (nn == 0.0) {
    if (h.eta == 0.0) return x;
    throw Error(ErrorKind::EmptySet, "empty intersection: zero normal with "
                                     "nonzero offset");
  }
  return x + ((h.eta - x.dot(h.u)) / nn) * h.u;
}

Vector project_halfspace(const Halfspace& w, const Vector& x,
                         double membership_tol) {
  require_same_dim(w.u, x, "project_halfspace");
  switch (shape(w)) {
    case SetShape::WholeSpace: return x;
    case SetShape::Empty:
      throw Error(ErrorKind::EmptySet,
                  "empty intersection: zero normal with negative offset");
    case SetShape::Proper: break;
  }
  if (contains(w, x, membership_tol) != HalfspaceMembership::Outside) return x;
  return project_hyperplane(Hyperplane{w.u, w.eta}, x);
}

Vector project(const Constraint& c, const Vector& x, double membership_tol) {
  if (const auto* h = std::get_if<Hyperplane>(&c)) {
    return project_hyperplane(*h, x);
  }
  return project_halfspace(std::get<Halfspace>(c), x, membership_tol);
}

}  // namespace polyproj
