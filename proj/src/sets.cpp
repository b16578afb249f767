#include "polyproj/sets.hpp"

#include <algorithm>
#include <cmath>

#include "polyproj/error.hpp"

namespace polyproj {

SetKind kind_of(const Constraint& c) {
  return std::holds_alternative<Hyperplane>(c) ? SetKind::Hyperplane
                                               : SetKind::Halfspace;
}

const Vector& normal_of(const Constraint& c) {
  return std::visit([](const auto& s) -> const Vector& { return s.u; }, c);
}

double offset_of(const Constraint& c) {
  return std::visit([](const auto& s) { return s.eta; }, c);
}

const char* to_string(SetKind kind) {
  return kind == SetKind::Hyperplane ? "hyperplane" : "halfspace";
}

SetShape shape(const Hyperplane& h) {
  if (h.u.norm() != 0.0) return SetShape::Proper;
  return h.eta == 0.0 ? SetShape::WholeSpace : SetShape::Empty;
}

SetShape shape(const Halfspace& w) {
  if (w.u.norm() != 0.0) return SetShape::Proper;
  return w.eta >= 0.0 ? SetShape::WholeSpace : SetShape::Empty;
}

SetShape shape(const Constraint& c) {
  return std::visit([](const auto& s) { return shape(s); }, c);
}

const char* to_string(HalfspaceMembership m) {
  switch (m) {
    case HalfspaceMembership::Inside: return "Inside";
    case HalfspaceMembership::Boundary: return "Boundary";
    case HalfspaceMembership::Outside: return "Outside";
  }
  return "Unknown";
}

const char* to_string(HyperplaneMembership m) {
  return m == HyperplaneMembership::OnPlane ? "OnPlane" : "Off";
}

double membership_bound(const Vector& u, double eta, const Vector& x,
                        double tol) {
  return tol * (1.0 + std::abs(eta) + u.norm() * x.norm());
}

HalfspaceMembership contains(const Halfspace& w, const Vector& x, double tol) {
  const double d = inner(x, w.u) - w.eta;
  const double bound = membership_bound(w.u, w.eta, x, tol);
  if (std::abs(d) <= bound) return HalfspaceMembership::Boundary;
  return d < 0 ? HalfspaceMembership::Inside : HalfspaceMembership::Outside;
}

HyperplaneMembership contains(const Hyperplane& h, const Vector& x, double tol) {
  const double d = inner(x, h.u) - h.eta;
  return std::abs(d) <= membership_bound(h.u, h.eta, x, tol)
             ? HyperplaneMembership::OnPlane
             : HyperplaneMembership::Off;
}

bool is_member(const Constraint& c, const Vector& x, double tol) {
  if (const auto* h = std::get_if<Hyperplane>(&c)) {
    return contains(*h, x, tol) == HyperplaneMembership::OnPlane;
  }
  return contains(std::get<Halfspace>(c), x, tol) !=
         HalfspaceMembership::Outside;
}

double violation(const Constraint& c, const Vector& x) {
  const double d = inner(x, normal_of(c)) - offset_of(c);
  return kind_of(c) == SetKind::Hyperplane ? std::abs(d) : std::max(0.0, d);
}

ReducedHyperplaneSystem reduce_hyperplane_system(
    const std::vector<Hyperplane>& planes, double tol) {
  if (planes.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "reduce_hyperplane_system: no planes given");
  }
  std::vector<Vector> normals;
  normals.reserve(planes.size());
  for (const auto& p : planes) {
    require_same_dim(planes.front().u, p.u, "reduce_hyperplane_system");
    normals.push_back(p.u);
  }

  const IndependentSubset subset = max_independent_subset(normals, tol);
  ReducedHyperplaneSystem out;
  for (std::size_t idx : subset.retained) {
    out.retained.push_back(planes[idx]);
    out.retained_indices.push_back(idx);
  }

  for (std::size_t k = 0; k < subset.excluded.size(); ++k) {
    const Hyperplane& dropped = planes[subset.excluded[k]];
    const Vector& coef = subset.coefficients[k];
    double implied = 0.0;
    double magnitude = 0.0;
    for (Eigen::Index j = 0; j < coef.size(); ++j) {
      const double term = coef[j] * out.retained[j].eta;
      implied += term;
      magnitude += std::abs(term);
    }
    const double slack = tol * (1.0 + std::abs(dropped.eta) + magnitude);
    if (std::abs(dropped.eta - implied) > slack) {
      out.status = Feasibility::Infeasible;
    }
  }
  return out;
}

}  // namespace polyproj
