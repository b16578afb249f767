#pragma once

#include "polyproj/sets.hpp"

namespace polyproj {

/// x + (eta − ⟨x,u⟩)/‖u‖² u. A zero normal gives x back when eta = 0 and
/// throws EmptySet otherwise.
Vector project_hyperplane(const Hyperplane& h, const Vector& x);

/// x when ⟨x,u⟩ ≤ eta up to the membership slack, otherwise the projection
/// onto the boundary plane. Throws EmptySet for u = 0 with eta < 0.
Vector project_halfspace(const Halfspace& w, const Vector& x,
                         double membership_tol = 1e-12);

Vector project(const Constraint& c, const Vector& x,
               double membership_tol = 1e-12);

}  // namespace polyproj
