#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "polyproj/linalg.hpp"

namespace polyproj {

/// {x : ⟨x,u⟩ = eta}
struct Hyperplane {
  Vector u;
  double eta = 0.0;
};

/// {x : ⟨x,u⟩ ≤ eta}
struct Halfspace {
  Vector u;
  double eta = 0.0;
};

using Constraint = std::variant<Hyperplane, Halfspace>;

enum class SetKind { Hyperplane, Halfspace };

SetKind kind_of(const Constraint& c);
const Vector& normal_of(const Constraint& c);
double offset_of(const Constraint& c);
const char* to_string(SetKind kind);

/// Shape of a single constraint set, decided on an exactly zero normal.
enum class SetShape { Proper, WholeSpace, Empty };

SetShape shape(const Hyperplane& h);
SetShape shape(const Halfspace& w);
SetShape shape(const Constraint& c);

enum class HalfspaceMembership { Inside, Boundary, Outside };
enum class HyperplaneMembership { OnPlane, Off };

const char* to_string(HalfspaceMembership m);
const char* to_string(HyperplaneMembership m);

/// Slack used by contains(): tol·(1 + |eta| + ‖u‖‖x‖).
double membership_bound(const Vector& u, double eta, const Vector& x,
                        double tol);

HalfspaceMembership contains(const Halfspace& w, const Vector& x, double tol);
HyperplaneMembership contains(const Hyperplane& h, const Vector& x, double tol);

/// True for Inside, Boundary and OnPlane.
bool is_member(const Constraint& c, const Vector& x, double tol);

/// max(0, ⟨x,u⟩ − eta) for a halfspace, |⟨x,u⟩ − eta| for a hyperplane.
double violation(const Constraint& c, const Vector& x);

enum class Feasibility { Feasible, Infeasible };

struct ReducedHyperplaneSystem {
  std::vector<Hyperplane> retained;
  /// Position of each retained plane in the input.
  std::vector<std::size_t> retained_indices;
  Feasibility status = Feasibility::Feasible;
};

/// Keeps a maximal independent family of normals (greedy, input order) and
/// checks every dropped plane against the offset implied by the combination
/// of the kept ones.
ReducedHyperplaneSystem reduce_hyperplane_system(
    const std::vector<Hyperplane>& planes, double tol = 1e-10);

}  // namespace polyproj
