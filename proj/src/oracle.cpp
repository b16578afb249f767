#include "polyproj/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "polyproj/error.hpp"

namespace polyproj {

KktCertificate kkt_check(const std::vector<Constraint>& sets, const Vector& x,
                         const Vector& p, const std::vector<double>& lambda,
                         const std::vector<double>& beta, double tol) {
  require_same_dim(x, p, "kkt_check");
  KktCertificate cert;
  cert.lambda = lambda;
  cert.beta = beta;

  Vector residual = p - x;
  std::size_t li = 0;
  std::size_t bi = 0;
  bool signs_ok = true;
  for (const auto& set : sets) {
    const Vector& u = normal_of(set);
    require_same_dim(u, x, "kkt_check");
    const double d = p.dot(u) - offset_of(set);
    cert.feasibility_residual = std::max(cert.feasibility_residual,
                                         violation(set, p));
    if (kind_of(set) == SetKind::Halfspace) {
      if (li >= lambda.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "kkt_check: fewer lambda entries than halfspaces");
      }
      const double l = lambda[li++];
      residual += l * u;
      cert.complementarity_residual =
          std::max(cert.complementarity_residual, std::abs(l * d));
      if (l < -tol) signs_ok = false;
    } else {
      if (bi >= beta.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "kkt_check: fewer beta entries than hyperplanes");
      }
      residual += beta[bi++] * u;
    }
  }
  if (li != lambda.size() || bi != beta.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "kkt_check: multiplier counts do not match the sets");
  }
  cert.stationarity_residual = residual.norm();
  cert.valid = signs_ok && cert.stationarity_residual <= tol &&
               cert.feasibility_residual <= tol &&
               cert.complementarity_residual <= tol;
  return cert;
}

namespace {

struct Candidate {
  Vector point;
  std::vector<double> lambda;
  std::vector<double> beta;
  std::vector<std::size_t> active;
  double distance;
};

}  // namespace

OracleResult oracle_project(const std::vector<Constraint>& sets, const Vector& x,
                            const Tolerances& tol) {
  std::vector<std::size_t> plane_idx;
  std::vector<std::size_t> half_idx;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    require_same_dim(normal_of(sets[i]), x, "oracle_project");
    if (shape(sets[i]) == SetShape::Empty) {
      throw Error(ErrorKind::EmptySet, "empty intersection (empty constraint)");
    }
    (kind_of(sets[i]) == SetKind::Hyperplane ? plane_idx : half_idx).push_back(i);
  }
  if (half_idx.size() > kMaxOracleInequalities) {
    throw Error(ErrorKind::TooManyConstraints,
                "oracle_project: more than 20 halfspaces");
  }

  // Candidate points are built from a Gram solve, so feasibility and sign
  // checks use the looser KKT tolerance rather than the membership one.
  const double accept = tol.kkt;
  const std::uint32_t subsets = 1u << half_idx.size();
  std::vector<Candidate> accepted;

  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    std::vector<Hyperplane> eqs;
    std::vector<std::size_t> active;
    for (std::size_t j : plane_idx) {
      const auto& h = std::get<Hyperplane>(sets[j]);
      eqs.push_back(h);
    }
    for (std::size_t k = 0; k < half_idx.size(); ++k) {
      if (mask & (1u << k)) {
        const auto& w = std::get<Halfspace>(sets[half_idx[k]]);
        eqs.push_back(Hyperplane{w.u, w.eta});
        active.push_back(k);
      }
    }

    Candidate cand;
    cand.lambda.assign(half_idx.size(), 0.0);
    cand.beta.assign(plane_idx.size(), 0.0);
    cand.active = active;
    cand.point = x;
    if (!eqs.empty()) {
      const ReducedHyperplaneSystem reduced =
          reduce_hyperplane_system(eqs, tol.dependence);
      if (reduced.status == Feasibility::Infeasible) continue;
      if (!reduced.retained.empty()) {
        std::vector<Vector> normals;
        Vector rhs(static_cast<Eigen::Index>(reduced.retained.size()));
        for (std::size_t r = 0; r < reduced.retained.size(); ++r) {
          normals.push_back(reduced.retained[r].u);
          rhs[static_cast<Eigen::Index>(r)] =
              x.dot(reduced.retained[r].u) - reduced.retained[r].eta;
        }
        const Vector coef = solve_gram(normals, rhs, tol.dependence);
        for (std::size_t r = 0; r < normals.size(); ++r) {
          const double m = coef[static_cast<Eigen::Index>(r)];
          cand.point -= m * normals[r];
          const std::size_t slot = reduced.retained_indices[r];
          if (slot < plane_idx.size()) {
            cand.beta[slot] = m;
          } else {
            cand.lambda[active[slot - plane_idx.size()]] = m;
          }
        }
      }
    }

    bool ok = true;
    for (const auto& set : sets) {
      const double bound = membership_bound(normal_of(set), offset_of(set),
                                            cand.point, accept);
      if (violation(set, cand.point) > bound) {
        ok = false;
        break;
      }
    }
    for (double l : cand.lambda) {
      if (l < -accept) ok = false;
    }
    if (!ok) continue;
    cand.distance = (cand.point - x).norm();
    accepted.push_back(std::move(cand));
  }

  if (accepted.empty()) {
    throw Error(ErrorKind::EmptySet, "empty intersection (no feasible candidate)");
  }

  const Candidate* best = &accepted.front();
  for (const auto& c : accepted) {
    const double slack = 1e-12 * (1.0 + best->distance);
    if (c.distance < best->distance - slack) {
      best = &c;
    } else if (std::abs(c.distance - best->distance) <= slack &&
               std::lexicographical_compare(c.active.begin(), c.active.end(),
                                            best->active.begin(),
                                            best->active.end())) {
      best = &c;
    }
  }

  OracleResult out;
  out.point = best->point;
  for (std::size_t k : best->active) out.active.push_back(half_idx[k]);
  out.candidates = accepted.size();
  for (const auto& c : accepted) {
    out.candidate_spread =
        std::max(out.candidate_spread, (c.point - best->point).norm());
  }
  out.certificate =
      kkt_check(sets, x, best->point, best->lambda, best->beta, tol.kkt);
  return out;
}

}  // namespace polyproj
