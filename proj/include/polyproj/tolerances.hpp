#pragma once

namespace polyproj {

/// Numeric gates used throughout the library. Every exact equality or sign
/// test of the underlying geometry is replaced by one of these.
struct Tolerances {
  /// Two vectors are dependent iff ‖a‖‖b‖ − |⟨a,b⟩| ≤ dependence·‖a‖‖b‖.
  double dependence = 1e-10;
  /// Relative slack for set membership, see contains().
  double membership = 1e-12;
  /// Absolute tolerance on KKT residuals.
  double kkt = 1e-9;
  /// Gamma within this distance of 1 flags a closed-form result as
  /// ill-conditioned.
  double ill_conditioned = 1e-6;
  /// Dykstra stops when successive sweep iterates differ by at most this.
  double dykstra = 1e-12;
  int dykstra_max_sweeps = 10000;
};

/// Defaults, with the membership tolerance taken from POLYPROJ_TOL when that
/// variable holds a positive number.
Tolerances default_tolerances();

}  // namespace polyproj
