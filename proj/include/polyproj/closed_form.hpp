#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyproj/sets.hpp"
#include "polyproj/tolerances.hpp"

namespace polyproj {

/// Where x sits relative to a pair of sets with independent normals.
/// InsideBoth/C1/C2/C3 apply to two halfspaces, InC/NotInC to a hyperplane
/// paired with a halfspace.
enum class Region { InsideBoth, C1, C2, C3, InC, NotInC };

const char* to_string(Region r);

/// Branches for pairs whose normals are linearly dependent.
enum class DependentCase {
  // Two halfspaces.
  WholeSpace,       // both normals zero, offsets nonnegative
  BothZeroEmpty,    // both normals zero, some offset negative
  FirstOnly,        // second normal zero, second offset nonnegative
  SecondZeroEmpty,  // second normal zero, second offset negative
  SecondOnly,       // first normal zero, first offset nonnegative
  FirstZeroEmpty,   // first normal zero, first offset negative
  Aligned,          // positive inner product: one halfspace contains the other
  OpposedEmpty,     // negative inner product, disjoint
  Slab,             // negative inner product, nonempty slab
  // Hyperplane with a halfspace.
  PlaneOnly,        // the plane lies inside the halfspace
  HalfspaceOnly,    // the plane is the whole space
  PlaneEmpty,       // zero normal with nonzero offset
  PlaneOutside,     // the plane misses the halfspace
};

const char* to_string(DependentCase c);
bool is_empty(DependentCase c);

struct ProjectionBreakdown {
  Vector point;
  /// point = x − Σ coefficients[i]·directions[i].
  std::vector<double> coefficients;
  std::vector<Vector> directions;
  /// Multipliers against the original normals, one per halfspace and one per
  /// hyperplane, each in input order. These feed kkt_check directly.
  std::vector<double> lambda;
  std::vector<double> beta;
  std::optional<Region> region;
  std::optional<DependentCase> dependent_case;
  /// Independent normals with gamma within Tolerances::ill_conditioned of 1.
  bool ill_conditioned = false;
  std::string note;
};

/// Projection onto the intersection of planes. Redundant and zero-normal
/// planes are dropped first; their beta entries are zero.
/// Throws EmptySet when the system is inconsistent.
ProjectionBreakdown project_hyperplanes(const std::vector<Hyperplane>& planes,
                                        const Vector& x,
                                        const Tolerances& tol = {});

/// Throws DependentNormals when the normals fail the independence test.
Region classify_region_halfspace_pair(const Halfspace& w1, const Halfspace& w2,
                                      const Vector& x,
                                      const Tolerances& tol = {});

/// Throws InvalidArgument when the normals are independent.
DependentCase classify_dependent_halfspace_pair(const Halfspace& w1,
                                                const Halfspace& w2,
                                                const Tolerances& tol = {});

/// Projection onto W1 ∩ W2. Throws EmptySet when the intersection is empty.
ProjectionBreakdown project_halfspace_pair(const Halfspace& w1,
                                           const Halfspace& w2,
                                           const Vector& x,
                                           const Tolerances& tol = {});

/// Throws InvalidArgument when the normals are independent.
DependentCase classify_dependent_hyperplane_halfspace(
    const Hyperplane& h1, const Halfspace& w2, const Tolerances& tol = {});

/// Projection onto H1 ∩ W2. Throws EmptySet when the intersection is empty.
ProjectionBreakdown project_hyperplane_halfspace(const Hyperplane& h1,
                                                 const Halfspace& w2,
                                                 const Vector& x,
                                                 const Tolerances& tol = {});

}  // namespace polyproj
