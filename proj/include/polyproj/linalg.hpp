#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace polyproj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

Vector make_vector(std::initializer_list<double> coords);

/// Throws DimensionMismatch when the lengths differ. `what` names the caller.
void require_same_dim(const Vector& a, const Vector& b, const char* what);

bool all_finite(const Vector& x);

double inner(const Vector& x, const Vector& y);
double norm(const Vector& x);

enum class PairTag {
  BothZero,
  FirstZero,
  SecondZero,
  DependentPositive,
  DependentNegative,
  IndependentOrthogonal,
  IndependentPositive,
  IndependentNegative,
};

const char* to_string(PairTag tag);

struct PairClass {
  PairTag tag;
  /// |⟨u1,u2⟩| / (‖u1‖‖u2‖), or 0 when either vector vanishes.
  double gamma;
};

/// Zero tags and Dependent* tags.
bool is_dependent(PairTag tag);
bool has_zero(PairTag tag);

/// Classifies a pair of normals. A vector counts as zero only when it is
/// exactly zero; dependence uses the relative test
/// ‖u1‖‖u2‖ − |⟨u1,u2⟩| ≤ tol·‖u1‖‖u2‖.
PairClass classify_pair(const Vector& u1, const Vector& u2, double tol = 1e-10);

/// Entries ⟨a_i, a_j⟩.
Matrix gram_matrix(const std::vector<Vector>& generators);

/// Cholesky of the Gram matrix of `generators`, or false when some pivot
/// satisfies pivot ≤ (1 − (1 − tol)²)·G_ii. For a pair this is exactly the
/// classify_pair dependence test.
bool gram_is_positive_definite(const std::vector<Vector>& generators,
                               double tol = 1e-10);

/// Solves G(a_1..a_m)·β = rhs. Throws SingularGram when the generators are
/// dependent in the sense of gram_is_positive_definite.
Vector solve_gram(const std::vector<Vector>& generators, const Vector& rhs,
                  double tol = 1e-10);

struct IndependentSubset {
  /// Indices into the input, increasing.
  std::vector<std::size_t> retained;
  /// Indices of the vectors left out, increasing.
  std::vector<std::size_t> excluded;
  /// For excluded[k], coefficients[k][j] multiplies vectors[retained[j]].
  /// Zero vectors get all-zero coefficients.
  std::vector<Vector> coefficients;
};

/// Greedy scan in input order: a vector is kept when it is independent of
/// everything kept before it. Exact zero vectors are always excluded.
IndependentSubset max_independent_subset(const std::vector<Vector>& vectors,
                                         double tol = 1e-10);

}  // namespace polyproj
