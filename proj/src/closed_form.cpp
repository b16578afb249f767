#include "polyproj/closed_form.hpp"

#include <cmath>

#include "polyproj/atomic.hpp"
#include "polyproj/error.hpp"

namespace polyproj {

const char* to_string(Region r) {
  switch (r) {
    case Region::InsideBoth: return "InsideBoth";
    case Region::C1: return "C1";
    case Region::C2: return "C2";
    case Region::C3: return "C3";
    case Region::InC: return "InC";
    case Region::NotInC: return "NotInC";
  }
  return "Unknown";
}

const char* to_string(DependentCase c) {
  switch (c) {
    case DependentCase::WholeSpace: return "WholeSpace";
    case DependentCase::BothZeroEmpty: return "BothZeroEmpty";
    case DependentCase::FirstOnly: return "FirstOnly";
    case DependentCase::SecondZeroEmpty: return "SecondZeroEmpty";
    case DependentCase::SecondOnly: return "SecondOnly";
    case DependentCase::FirstZeroEmpty: return "FirstZeroEmpty";
    case DependentCase::Aligned: return "Aligned";
    case DependentCase::OpposedEmpty: return "OpposedEmpty";
    case DependentCase::Slab: return "Slab";
    case DependentCase::PlaneOnly: return "PlaneOnly";
    case DependentCase::HalfspaceOnly: return "HalfspaceOnly";
    case DependentCase::PlaneEmpty: return "PlaneEmpty";
    case DependentCase::PlaneOutside: return "PlaneOutside";
  }
  return "Unknown";
}

bool is_empty(DependentCase c) {
  switch (c) {
    case DependentCase::BothZeroEmpty:
    case DependentCase::SecondZeroEmpty:
    case DependentCase::FirstZeroEmpty:
    case DependentCase::OpposedEmpty:
    case DependentCase::PlaneEmpty:
    case DependentCase::PlaneOutside:
      return true;
    default:
      return false;
  }
}

namespace {

[[noreturn]] void throw_empty(DependentCase c) {
  throw Error(ErrorKind::EmptySet,
              std::string("empty intersection (") + to_string(c) + ")");
}

// Multiplier c with P x = x − c·u for the halfspace {⟨y,u⟩ ≤ eta}; zero when
// x is inside up to the membership slack.
double halfspace_step(const Vector& u, double eta, const Vector& x,
                      double membership_tol) {
  const double nn = u.squaredNorm();
  if (nn == 0.0) return 0.0;
  const double d = x.dot(u) - eta;
  if (d <= membership_bound(u, eta, x, membership_tol)) return 0.0;
  return d / nn;
}

void add_term(ProjectionBreakdown& out, double coef, const Vector& dir) {
  if (coef == 0.0) return;
  out.coefficients.push_back(coef);
  out.directions.push_back(dir);
  out.point -= coef * dir;
}

ProjectionBreakdown start(const Vector& x, std::size_t halfspaces,
                          std::size_t hyperplanes) {
  ProjectionBreakdown out;
  out.point = x;
  out.lambda.assign(halfspaces, 0.0);
  out.beta.assign(hyperplanes, 0.0);
  return out;
}

Region region_unchecked(const Halfspace& w1, const Halfspace& w2,
                        const Vector& x, double membership_tol) {
  const bool in1 = contains(w1, x, membership_tol) != HalfspaceMembership::Outside;
  const bool in2 = contains(w2, x, membership_tol) != HalfspaceMembership::Outside;
  if (in1 && in2) return Region::InsideBoth;
  const double d1 = x.dot(w1.u) - w1.eta;
  const double d2 = x.dot(w2.u) - w2.eta;
  const double n1 = w1.u.squaredNorm();
  const double n2 = w2.u.squaredNorm();
  const double c = w1.u.dot(w2.u);
  if (d1 > 0 && n1 * d2 <= c * d1) return Region::C1;
  if (d2 > 0 && n2 * d1 <= c * d2) return Region::C2;
  return Region::C3;
}

ProjectionBreakdown dependent_halfspace_pair(const Halfspace& w1,
                                             const Halfspace& w2,
                                             const Vector& x,
                                             const Tolerances& tol) {
  const DependentCase kase = classify_dependent_halfspace_pair(w1, w2, tol);
  if (is_empty(kase)) throw_empty(kase);
  ProjectionBreakdown out = start(x, 2, 0);
  out.dependent_case = kase;

  switch (kase) {
    case DependentCase::WholeSpace:
      break;
    case DependentCase::FirstOnly: {
      out.lambda[0] = halfspace_step(w1.u, w1.eta, x, tol.membership);
      add_term(out, out.lambda[0], w1.u);
      break;
    }
    case DependentCase::SecondOnly: {
      out.lambda[1] = halfspace_step(w2.u, w2.eta, x, tol.membership);
      add_term(out, out.lambda[1], w2.u);
      break;
    }
    case DependentCase::Aligned: {
      const double a1 = w1.u.norm();
      const double a2 = w2.u.norm();
      const Vector u = a2 * w1.u;
      const double bound1 = w1.eta * a2;
      const double bound2 = w2.eta * a1;
      const bool first_binds = bound1 <= bound2;
      const double c = halfspace_step(u, first_binds ? bound1 : bound2, x,
                                      tol.membership);
      add_term(out, c, u);
      if (first_binds) {
        out.lambda[0] = c * a2;
      } else {
        out.lambda[1] = c * a1;
      }
      out.note = "single multiplier against the aggregated normal |u2|*u1";
      break;
    }
    case DependentCase::Slab: {
      const double a1 = w1.u.norm();
      const double a2 = w2.u.norm();
      const Vector u = a2 * w1.u;
      const double lower = -w2.eta * a1;
      const double upper = w1.eta * a2;
      const double s = x.dot(u);
      const double nn = u.squaredNorm();
      if (s - upper > membership_bound(u, upper, x, tol.membership)) {
        const double c = (s - upper) / nn;
        add_term(out, c, u);
        out.lambda[0] = c * a2;
      } else if (lower - s > membership_bound(u, lower, x, tol.membership)) {
        const double c = (s - lower) / nn;
        add_term(out, c, u);
        out.lambda[1] = -c * a1;
      }
      out.note = "single multiplier against the aggregated normal |u2|*u1";
      break;
    }
    default:
      throw Error(ErrorKind::InvalidArgument,
                  "project_halfspace_pair: unexpected dependent case");
  }
  return out;
}

}  // namespace

ProjectionBreakdown project_hyperplanes(const std::vector<Hyperplane>& planes,
                                        const Vector& x,
                                        const Tolerances& tol) {
  if (planes.empty()) {
    throw Error(ErrorKind::InvalidArgument, "project_hyperplanes: no planes");
  }
  for (const auto& p : planes) require_same_dim(p.u, x, "project_hyperplanes");

  const ReducedHyperplaneSystem reduced =
      reduce_hyperplane_system(planes, tol.dependence);
  if (reduced.status == Feasibility::Infeasible) {
    throw Error(ErrorKind::EmptySet, "empty intersection (inconsistent planes)");
  }
  ProjectionBreakdown out = start(x, 0, planes.size());
  if (reduced.retained.empty()) return out;

  std::vector<Vector> normals;
  Vector rhs(static_cast<Eigen::Index>(reduced.retained.size()));
  for (std::size_t i = 0; i < reduced.retained.size(); ++i) {
    normals.push_back(reduced.retained[i].u);
    rhs[static_cast<Eigen::Index>(i)] =
        x.dot(reduced.retained[i].u) - reduced.retained[i].eta;
  }
  const Vector coef = solve_gram(normals, rhs, tol.dependence);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const double b = coef[static_cast<Eigen::Index>(i)];
    add_term(out, b, normals[i]);
    out.beta[reduced.retained_indices[i]] = b;
  }
  out.ill_conditioned = !gram_is_positive_definite(normals, tol.ill_conditioned);
  return out;
}

Region classify_region_halfspace_pair(const Halfspace& w1, const Halfspace& w2,
                                      const Vector& x, const Tolerances& tol) {
  require_same_dim(w1.u, x, "classify_region_halfspace_pair");
  require_same_dim(w2.u, x, "classify_region_halfspace_pair");
  if (is_dependent(classify_pair(w1.u, w2.u, tol.dependence).tag)) {
    throw Error(ErrorKind::DependentNormals,
                "classify_region_halfspace_pair: normals are dependent");
  }
  return region_unchecked(w1, w2, x, tol.membership);
}

DependentCase classify_dependent_halfspace_pair(const Halfspace& w1,
                                                const Halfspace& w2,
                                                const Tolerances& tol) {
  const PairClass pc = classify_pair(w1.u, w2.u, tol.dependence);
  if (!is_dependent(pc.tag)) {
    throw Error(ErrorKind::InvalidArgument,
                "classify_dependent_halfspace_pair: normals are independent");
  }
  switch (pc.tag) {
    case PairTag::BothZero:
      return std::min(w1.eta, w2.eta) >= 0 ? DependentCase::WholeSpace
                                           : DependentCase::BothZeroEmpty;
    case PairTag::SecondZero:
      return w2.eta >= 0 ? DependentCase::FirstOnly
                         : DependentCase::SecondZeroEmpty;
    case PairTag::FirstZero:
      return w1.eta >= 0 ? DependentCase::SecondOnly
                         : DependentCase::FirstZeroEmpty;
    case PairTag::DependentPositive:
      return DependentCase::Aligned;
    default:
      break;
  }
  const double width = w1.eta * w2.u.norm() + w2.eta * w1.u.norm();
  return width < 0 ? DependentCase::OpposedEmpty : DependentCase::Slab;
}

ProjectionBreakdown project_halfspace_pair(const Halfspace& w1,
                                           const Halfspace& w2,
                                           const Vector& x,
                                           const Tolerances& tol) {
  require_same_dim(w1.u, x, "project_halfspace_pair");
  require_same_dim(w2.u, x, "project_halfspace_pair");
  const PairClass pc = classify_pair(w1.u, w2.u, tol.dependence);
  if (is_dependent(pc.tag)) return dependent_halfspace_pair(w1, w2, x, tol);

  ProjectionBreakdown out = start(x, 2, 0);
  const Region region = region_unchecked(w1, w2, x, tol.membership);
  out.region = region;
  out.ill_conditioned = pc.gamma > 1.0 - tol.ill_conditioned;

  const double d1 = x.dot(w1.u) - w1.eta;
  const double d2 = x.dot(w2.u) - w2.eta;
  const double n1 = w1.u.squaredNorm();
  const double n2 = w2.u.squaredNorm();
  const double c = w1.u.dot(w2.u);
  double g1 = 0.0;
  double g2 = 0.0;
  switch (region) {
    case Region::InsideBoth:
      break;
    case Region::C1:
      g1 = d1 / n1;
      break;
    case Region::C2:
      g2 = d2 / n2;
      break;
    default: {
      const double det = n1 * n2 - c * c;
      g1 = (n2 * d1 - c * d2) / det;
      g2 = (n1 * d2 - c * d1) / det;
      break;
    }
  }
  add_term(out, g1, w1.u);
  add_term(out, g2, w2.u);
  out.lambda = {g1, g2};
  return out;
}

DependentCase classify_dependent_hyperplane_halfspace(const Hyperplane& h1,
                                                      const Halfspace& w2,
                                                      const Tolerances& tol) {
  const PairClass pc = classify_pair(h1.u, w2.u, tol.dependence);
  if (!is_dependent(pc.tag)) {
    throw Error(ErrorKind::InvalidArgument,
                "classify_dependent_hyperplane_halfspace: normals are "
                "independent");
  }
  if (pc.tag == PairTag::BothZero || pc.tag == PairTag::FirstZero) {
    if (h1.eta != 0.0) return DependentCase::PlaneEmpty;
    return shape(w2) == SetShape::Empty ? DependentCase::PlaneOutside
                                        : DependentCase::HalfspaceOnly;
  }
  if (pc.tag == PairTag::SecondZero) {
    return w2.eta >= 0 ? DependentCase::PlaneOnly : DependentCase::PlaneOutside;
  }
  const Vector on_plane = (h1.eta / h1.u.squaredNorm()) * h1.u;
  return contains(w2, on_plane, tol.membership) != HalfspaceMembership::Outside
             ? DependentCase::PlaneOnly
             : DependentCase::PlaneOutside;
}

ProjectionBreakdown project_hyperplane_halfspace(const Hyperplane& h1,
                                                 const Halfspace& w2,
                                                 const Vector& x,
                                                 const Tolerances& tol) {
  require_same_dim(h1.u, x, "project_hyperplane_halfspace");
  require_same_dim(w2.u, x, "project_hyperplane_halfspace");
  const PairClass pc = classify_pair(h1.u, w2.u, tol.dependence);
  ProjectionBreakdown out = start(x, 1, 1);

  if (is_dependent(pc.tag)) {
    const DependentCase kase = classify_dependent_hyperplane_halfspace(h1, w2, tol);
    if (is_empty(kase)) throw_empty(kase);
    out.dependent_case = kase;
    if (kase == DependentCase::PlaneOnly) {
      out.beta[0] = (x.dot(h1.u) - h1.eta) / h1.u.squaredNorm();
      add_term(out, out.beta[0], h1.u);
    } else {
      out.lambda[0] = halfspace_step(w2.u, w2.eta, x, tol.membership);
      add_term(out, out.lambda[0], w2.u);
    }
    return out;
  }

  const double d1 = x.dot(h1.u) - h1.eta;
  const double d2 = x.dot(w2.u) - w2.eta;
  const double n1 = h1.u.squaredNorm();
  const double n2 = w2.u.squaredNorm();
  const double c = h1.u.dot(w2.u);
  const double m = d2 * n1 - d1 * c;
  double xi1 = 0.0;
  double xi2 = 0.0;
  if (m > 0) {
    const double det = n1 * n2 - c * c;
    xi1 = (d1 * n2 - d2 * c) / det;
    xi2 = m / det;
    out.region = Region::InC;
  } else {
    xi1 = d1 / n1;
    out.region = Region::NotInC;
  }
  add_term(out, xi1, h1.u);
  add_term(out, xi2, w2.u);
  out.beta[0] = xi1;
  out.lambda[0] = xi2;
  out.ill_conditioned = pc.gamma > 1.0 - tol.ill_conditioned;
  return out;
}

}  // namespace polyproj
