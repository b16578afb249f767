#pragma once

#include <cstddef>
#include <vector>

#include "polyproj/sets.hpp"
#include "polyproj/tolerances.hpp"

namespace polyproj {

/// Optimality certificate for min ½‖y − x‖² over a list of constraints.
struct KktCertificate {
  std::vector<double> lambda;  // one per halfspace, input order
  std::vector<double> beta;    // one per hyperplane, input order
  double stationarity_residual = 0.0;
  double feasibility_residual = 0.0;
  double complementarity_residual = 0.0;
  bool valid = false;
};

/// Residuals of the KKT system at p:
///   stationarity    ‖p − x + Σ λ_i u_i + Σ β_j u_j‖
///   feasibility     largest constraint violation at p
///   complementarity max_i |λ_i (⟨p,u_i⟩ − η_i)|
/// Valid iff every residual is ≤ tol and every λ_i ≥ −tol.
KktCertificate kkt_check(const std::vector<Constraint>& sets, const Vector& x,
                         const Vector& p, const std::vector<double>& lambda,
                         const std::vector<double>& beta, double tol = 1e-9);

struct OracleResult {
  Vector point;
  KktCertificate certificate;
  /// Positions in `sets` of the halfspaces held with equality by the winner.
  std::vector<std::size_t> active;
  /// Number of accepted candidates and the largest distance between any of
  /// them and the returned point.
  std::size_t candidates = 0;
  double candidate_spread = 0.0;
};

inline constexpr std::size_t kMaxOracleInequalities = 20;

/// Exhaustive active-set search. Each subset of the halfspaces is turned into
/// equalities alongside every hyperplane, the resulting affine projection is
/// computed through the Gram system, and feasible candidates with
/// nonnegative multipliers compete on distance to x. Ties go to the
/// lexicographically smallest active set.
/// Throws TooManyConstraints above kMaxOracleInequalities halfspaces and
/// EmptySet when no candidate survives.
OracleResult oracle_project(const std::vector<Constraint>& sets, const Vector& x,
                            const Tolerances& tol = {});

}  // namespace polyproj
