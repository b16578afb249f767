#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "polyproj/instance.hpp"
#include "polyproj/iterate.hpp"
#include "polyproj/linalg.hpp"

namespace polyproj {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/// Uniform on the unit sphere.
Vector random_unit(Rng& rng, int dim);

/// Uniform in the cube [−radius, radius]^dim.
Vector random_point(Rng& rng, int dim, double radius);

/// Largest cosine accepted for independent pairs. Pairs closer to parallel
/// are redrawn so the two-normal formulas stay well conditioned.
inline constexpr double kMaxIndependentCosine = 0.999;

/// Normals with the requested classification. Nonzero normals have lengths
/// in [0.5, 3]; dependent pairs are exact scalar multiples.
std::pair<Vector, Vector> random_normal_pair(Rng& rng, int dim, PairTag tag);

enum class InstanceKind { PairHalfspace, HyperplaneHalfspace, HyperplaneSystem };

const char* to_string(InstanceKind kind);
std::optional<InstanceKind> instance_kind_from_string(const std::string& name);

/// Draws the classification used by generate_instance for a two-set kind:
///   PairHalfspace:        10% dependent, 10% orthogonal, 40% negative,
///                         40% positive cosine
///   HyperplaneHalfspace:  10% dependent, 20% orthogonal, 35% negative,
///                         35% positive cosine
/// Dependent draws split evenly between the two signs.
PairTag draw_pair_tag(Rng& rng, InstanceKind kind);

/// Deterministic in (kind, dim, seed). Offsets are uniform in [−2, 2] and
/// points uniform in [−3, 3]^dim. Hyperplane systems hold three planes, the
/// last one a combination of the first two.
Instance generate_instance(InstanceKind kind, int dim, std::uint64_t seed,
                           int point_count = 5);

/// Two sets and a query point whose predicted composition behaviour is `tag`.
/// The intersection is always nonempty.
///   ExactComposition  halfspaces, dependent or orthogonal normals
///   LinearRateBAM     halfspaces with negative cosine, or a hyperplane and a
///                     halfspace with nonorthogonal independent normals
///   OneStepFeasible   halfspaces with positive cosine
///   ExactBothOrders   hyperplane and halfspace, dependent or orthogonal
struct PairSetup {
  Constraint first;
  Constraint second;
  Vector x;
};

PairSetup random_pair_for_behavior(Rng& rng, int dim, BehaviorTag tag);

}  // namespace polyproj
