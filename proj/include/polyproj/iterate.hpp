#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyproj/linalg.hpp"
#include "polyproj/sets.hpp"
#include "polyproj/tolerances.hpp"

namespace polyproj {

using Mapping = std::function<Vector(const Vector&)>;

enum class StopReason { Converged, MaxIterations };

const char* to_string(StopReason r);

struct IterationTrace {
  /// iterates[0] is the starting point.
  std::vector<Vector> iterates;
  /// ‖iterates[k] − reference‖ when a reference was supplied, else empty.
  std::vector<double> errors;
  StopReason stop_reason = StopReason::MaxIterations;
};

/// Single-set projector bound to a constraint.
Mapping projector_for(const Constraint& set, double membership_tol = 1e-12);

/// Composition applying `maps` left to right: maps.back() acts last.
Mapping compose(std::vector<Mapping> maps);

/// Applies the full composition (projectors[0] first) up to max_k times.
/// Stops early once a step moves by at most 1e-12·(1 + ‖x‖).
IterationTrace compose_iterate(const std::vector<Mapping>& projectors,
                               const Vector& x, int max_k,
                               const std::optional<Vector>& reference = {});

struct DykstraState {
  Vector x;
  /// corrections[i] is the latest correction attached to set i.
  std::vector<Vector> corrections;
  /// Number of single-set steps taken.
  long long k = 0;
};

DykstraState dykstra_init(std::size_t set_count, const Vector& x);

/// One step x_k = P_{set}(x_{k−1} + e_{k−m}), e_k = x_{k−1} + e_{k−m} − x_k on
/// set ((k − 1) mod m).
void dykstra_step(DykstraState& state, const std::vector<Constraint>& sets,
                  double membership_tol = 1e-12);

/// Cyclic Dykstra. Records x0 and then one iterate per sweep over all sets.
/// Converged once two successive sweep iterates differ by at most tol.
/// Throws EmptySet when any single set is empty.
IterationTrace dykstra(const std::vector<Constraint>& sets, const Vector& x,
                       int max_sweeps = 10000, double tol = 1e-12,
                       const std::optional<Vector>& reference = {},
                       DykstraState* final_state = nullptr);

/// Approximate multipliers read off the Dykstra corrections:
/// ⟨e_i,u_i⟩/‖u_i‖², split into halfspace and hyperplane lists.
void dykstra_multipliers(const DykstraState& state,
                         const std::vector<Constraint>& sets,
                         std::vector<double>& lambda, std::vector<double>& beta);

/// |⟨u1,u2⟩| / (‖u1‖‖u2‖), clamped to [0, 1]. Throws ZeroNormal.
double rate_gamma(const Vector& u1, const Vector& u2);

struct BamSample {
  bool fixpoint_identity_holds = true;
  bool rate_bound_holds = true;
  /// Largest value of ‖G^k x − P x‖ − γ^k ‖x − P x‖ over k.
  double worst_excess = 0.0;
};

struct BamReport {
  std::vector<BamSample> samples;
  bool all_hold() const;
};

/// Checks P(G x_k) = P(x_k) within 1e-8 and
/// ‖G^k x − P x‖ ≤ γ^k ‖x − P x‖ + 1e-9 for k = 1..k_max on every sample.
BamReport verify_bam(const Mapping& composition, const Mapping& fix_projector,
                     double gamma, const std::vector<Vector>& samples,
                     int k_max);

enum class BehaviorTag {
  ExactComposition,
  LinearRateBAM,
  OneStepFeasible,
  ExactBothOrders,
};

const char* to_string(BehaviorTag tag);
std::optional<BehaviorTag> behavior_from_string(const std::string& name);

struct BehaviorCase {
  BehaviorTag tag;
  /// Rate constant for LinearRateBAM, otherwise the pair cosine for reference.
  double gamma = 0.0;
};

/// What composing the two projectors does, decided from the set kinds and the
/// normal classification alone.
BehaviorCase predict_behavior(SetKind kind1, SetKind kind2,
                              const PairClass& pair);

}  // namespace polyproj

namespace polyproj {

/// CSV with header "k,x1,...,xn,err"; err is blank without a reference.
std::string trace_to_csv(const IterationTrace& trace);

}  // namespace polyproj
