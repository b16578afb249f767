#include "polyproj/linalg.hpp"

#include <cmath>
#include <string>

#include "polyproj/error.hpp"

namespace polyproj {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::DependentNormals: return "DependentNormals";
    case ErrorKind::ZeroNormal: return "ZeroNormal";
    case ErrorKind::TooManyConstraints: return "TooManyConstraints";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const char* to_string(PairTag tag) {
  switch (tag) {
    case PairTag::BothZero: return "BothZero";
    case PairTag::FirstZero: return "FirstZero";
    case PairTag::SecondZero: return "SecondZero";
    case PairTag::DependentPositive: return "DependentPositive";
    case PairTag::DependentNegative: return "DependentNegative";
    case PairTag::IndependentOrthogonal: return "IndependentOrthogonal";
    case PairTag::IndependentPositive: return "IndependentPositive";
    case PairTag::IndependentNegative: return "IndependentNegative";
  }
  return "Unknown";
}

Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": lengths " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
}

bool all_finite(const Vector& x) { return x.allFinite(); }

double inner(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "inner");
  return x.dot(y);
}

double norm(const Vector& x) { return x.norm(); }

bool is_dependent(PairTag tag) {
  switch (tag) {
    case PairTag::IndependentOrthogonal:
    case PairTag::IndependentPositive:
    case PairTag::IndependentNegative:
      return false;
    default:
      return true;
  }
}

bool has_zero(PairTag tag) {
  return tag == PairTag::BothZero || tag == PairTag::FirstZero ||
         tag == PairTag::SecondZero;
}

PairClass classify_pair(const Vector& u1, const Vector& u2, double tol) {
  require_same_dim(u1, u2, "classify_pair");
  const double n1 = u1.norm();
  const double n2 = u2.norm();
  if (n1 == 0.0 && n2 == 0.0) return {PairTag::BothZero, 0.0};
  if (n1 == 0.0) return {PairTag::FirstZero, 0.0};
  if (n2 == 0.0) return {PairTag::SecondZero, 0.0};

  const double c = u1.dot(u2);
  const double scale = n1 * n2;
  const double gamma = std::min(1.0, std::abs(c) / scale);
  if (scale - std::abs(c) <= tol * scale) {
    return {c > 0 ? PairTag::DependentPositive : PairTag::DependentNegative,
            gamma};
  }
  if (std::abs(c) <= tol * scale) return {PairTag::IndependentOrthogonal, gamma};
  return {c > 0 ? PairTag::IndependentPositive : PairTag::IndependentNegative,
          gamma};
}

Matrix gram_matrix(const std::vector<Vector>& generators) {
  const auto m = static_cast<Eigen::Index>(generators.size());
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = inner(generators[i], generators[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

namespace {

// Pivot threshold relative to the diagonal entry: the squared sine of the
// angle between a generator and the span of its predecessors.
double pivot_ratio(double tol) { return 1.0 - (1.0 - tol) * (1.0 - tol); }

bool factor(const Matrix& g, double tol, Eigen::LLT<Matrix>& llt) {
  if (g.rows() == 0) return true;
  llt.compute(g);
  if (llt.info() != Eigen::Success) return false;
  const Matrix& l = llt.matrixLLT();
  const double ratio = pivot_ratio(tol);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (l(i, i) * l(i, i) <= ratio * g(i, i)) return false;
  }
  return true;
}

}  // namespace

bool gram_is_positive_definite(const std::vector<Vector>& generators,
                               double tol) {
  Eigen::LLT<Matrix> llt;
  return factor(gram_matrix(generators), tol, llt);
}

Vector solve_gram(const std::vector<Vector>& generators, const Vector& rhs,
                  double tol) {
  if (static_cast<std::size_t>(rhs.size()) != generators.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "solve_gram: rhs length does not match generator count");
  }
  Eigen::LLT<Matrix> llt;
  if (!factor(gram_matrix(generators), tol, llt)) {
    throw Error(ErrorKind::SingularGram,
                "solve_gram: generators are linearly dependent");
  }
  if (generators.empty()) return Vector(0);
  return llt.solve(rhs);
}

IndependentSubset max_independent_subset(const std::vector<Vector>& vectors,
                                         double tol) {
  IndependentSubset out;
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (!kept.empty()) require_same_dim(kept.front(), vectors[i],
                                        "max_independent_subset");
    if (vectors[i].norm() == 0.0) {
      out.excluded.push_back(i);
      continue;
    }
    kept.push_back(vectors[i]);
    if (gram_is_positive_definite(kept, tol)) {
      out.retained.push_back(i);
    } else {
      kept.pop_back();
      out.excluded.push_back(i);
    }
  }

  const auto r = static_cast<Eigen::Index>(kept.size());
  for (std::size_t idx : out.excluded) {
    const Vector& v = vectors[idx];
    if (r == 0 || v.norm() == 0.0) {
      out.coefficients.push_back(Vector::Zero(r));
      continue;
    }
    Vector rhs(r);
    for (Eigen::Index j = 0; j < r; ++j) rhs[j] = kept[j].dot(v);
    out.coefficients.push_back(solve_gram(kept, rhs, tol));
  }
  return out;
}

}  // namespace polyproj
