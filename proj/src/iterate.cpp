#include "polyproj/iterate.hpp"

#include <cmath>
#include <utility>

#include "polyproj/atomic.hpp"
#include "polyproj/error.hpp"

namespace polyproj {

const char* to_string(StopReason r) {
  return r == StopReason::Converged ? "Converged" : "MaxIterations";
}

Mapping projector_for(const Constraint& set, double membership_tol) {
  return [set, membership_tol](const Vector& x) {
    return project(set, x, membership_tol);
  };
}

Mapping compose(std::vector<Mapping> maps) {
  return [maps = std::move(maps)](const Vector& x) {
    Vector y = x;
    for (const auto& m : maps) y = m(y);
    return y;
  };
}

IterationTrace compose_iterate(const std::vector<Mapping>& projectors,
                               const Vector& x, int max_k,
                               const std::optional<Vector>& reference) {
  if (max_k < 1) {
    throw Error(ErrorKind::InvalidArgument, "compose_iterate: max_k must be >= 1");
  }
  if (reference) require_same_dim(*reference, x, "compose_iterate");
  IterationTrace trace;
  trace.iterates.push_back(x);
  for (int k = 1; k <= max_k; ++k) {
    const Vector& prev = trace.iterates.back();
    Vector next = prev;
    for (const auto& p : projectors) next = p(next);
    require_same_dim(next, x, "compose_iterate");
    const double step = (next - prev).norm();
    const double scale = 1.0 + prev.norm();
    trace.iterates.push_back(std::move(next));
    if (step <= 1e-12 * scale) {
      trace.stop_reason = StopReason::Converged;
      break;
    }
  }
  if (reference) {
    for (const auto& it : trace.iterates) {
      trace.errors.push_back((it - *reference).norm());
    }
  }
  return trace;
}

DykstraState dykstra_init(std::size_t set_count, const Vector& x) {
  DykstraState s;
  s.x = x;
  s.corrections.assign(set_count, Vector::Zero(x.size()));
  return s;
}

void dykstra_step(DykstraState& state, const std::vector<Constraint>& sets,
                  double membership_tol) {
  const std::size_t m = sets.size();
  const auto i = static_cast<std::size_t>(state.k % static_cast<long long>(m));
  Vector shifted = state.x + state.corrections[i];
  Vector next = project(sets[i], shifted, membership_tol);
  state.corrections[i] = shifted - next;
  state.x = std::move(next);
  ++state.k;
}

IterationTrace dykstra(const std::vector<Constraint>& sets, const Vector& x,
                       int max_sweeps, double tol,
                       const std::optional<Vector>& reference,
                       DykstraState* final_state) {
  if (sets.empty()) {
    throw Error(ErrorKind::InvalidArgument, "dykstra: no sets");
  }
  if (max_sweeps < 1) {
    throw Error(ErrorKind::InvalidArgument, "dykstra: max_sweeps must be >= 1");
  }
  for (const auto& s : sets) {
    require_same_dim(normal_of(s), x, "dykstra");
    if (shape(s) == SetShape::Empty) {
      throw Error(ErrorKind::EmptySet, "empty intersection (empty constraint)");
    }
  }
  if (reference) require_same_dim(*reference, x, "dykstra");

  DykstraState state = dykstra_init(sets.size(), x);
  IterationTrace trace;
  trace.iterates.push_back(x);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const Vector before = state.x;
    for (std::size_t j = 0; j < sets.size(); ++j) dykstra_step(state, sets);
    trace.iterates.push_back(state.x);
    if ((state.x - before).norm() <= tol) {
      trace.stop_reason = StopReason::Converged;
      break;
    }
  }
  if (reference) {
    for (const auto& it : trace.iterates) {
      trace.errors.push_back((it - *reference).norm());
    }
  }
  if (final_state) *final_state = std::move(state);
  return trace;
}

void dykstra_multipliers(const DykstraState& state,
                         const std::vector<Constraint>& sets,
                         std::vector<double>& lambda, std::vector<double>& beta) {
  lambda.clear();
  beta.clear();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Vector& u = normal_of(sets[i]);
    const double nn = u.squaredNorm();
    const double m = nn == 0.0 ? 0.0 : state.corrections[i].dot(u) / nn;
    (kind_of(sets[i]) == SetKind::Halfspace ? lambda : beta).push_back(m);
  }
}

double rate_gamma(const Vector& u1, const Vector& u2) {
  require_same_dim(u1, u2, "rate_gamma");
  const double n1 = u1.norm();
  const double n2 = u2.norm();
  if (n1 == 0.0 || n2 == 0.0) {
    throw Error(ErrorKind::ZeroNormal, "rate_gamma: zero normal");
  }
  return std::min(1.0, std::abs(u1.dot(u2)) / (n1 * n2));
}

bool BamReport::all_hold() const {
  for (const auto& s : samples) {
    if (!s.fixpoint_identity_holds || !s.rate_bound_holds) return false;
  }
  return true;
}

BamReport verify_bam(const Mapping& composition, const Mapping& fix_projector,
                     double gamma, const std::vector<Vector>& samples,
                     int k_max) {
  constexpr double kFixSlack = 1e-8;
  constexpr double kRateSlack = 1e-9;
  BamReport report;
  for (const auto& x : samples) {
    BamSample s;
    const Vector target = fix_projector(x);
    const double initial = (x - target).norm();
    Vector xk = x;
    double gk = 1.0;
    for (int k = 1; k <= k_max; ++k) {
      const Vector next = composition(xk);
      if ((fix_projector(next) - fix_projector(xk)).norm() > kFixSlack) {
        s.fixpoint_identity_holds = false;
      }
      xk = next;
      gk *= gamma;
      const double excess = (xk - target).norm() - gk * initial;
      s.worst_excess = std::max(s.worst_excess, excess);
      if (excess > kRateSlack) s.rate_bound_holds = false;
    }
    report.samples.push_back(s);
  }
  return report;
}

const char* to_string(BehaviorTag tag) {
  switch (tag) {
    case BehaviorTag::ExactComposition: return "ExactComposition";
    case BehaviorTag::LinearRateBAM: return "LinearRateBAM";
    case BehaviorTag::OneStepFeasible: return "OneStepFeasible";
    case BehaviorTag::ExactBothOrders: return "ExactBothOrders";
  }
  return "Unknown";
}

std::optional<BehaviorTag> behavior_from_string(const std::string& name) {
  for (auto t : {BehaviorTag::ExactComposition, BehaviorTag::LinearRateBAM,
                 BehaviorTag::OneStepFeasible, BehaviorTag::ExactBothOrders}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

BehaviorCase predict_behavior(SetKind kind1, SetKind kind2,
                              const PairClass& pair) {
  const bool exact = is_dependent(pair.tag) ||
                     pair.tag == PairTag::IndependentOrthogonal;
  if (kind1 == SetKind::Halfspace && kind2 == SetKind::Halfspace) {
    if (exact) return {BehaviorTag::ExactComposition, pair.gamma};
    if (pair.tag == PairTag::IndependentNegative) {
      return {BehaviorTag::LinearRateBAM, pair.gamma};
    }
    return {BehaviorTag::OneStepFeasible, pair.gamma};
  }
  if (exact) return {BehaviorTag::ExactBothOrders, pair.gamma};
  return {BehaviorTag::LinearRateBAM, pair.gamma};
}

}  // namespace polyproj

#include <sstream>

#include "polyproj/instance.hpp"

namespace polyproj {

std::string trace_to_csv(const IterationTrace& trace) {
  std::ostringstream os;
  const Eigen::Index n = trace.iterates.empty() ? 0 : trace.iterates[0].size();
  os << 'k';
  for (Eigen::Index i = 1; i <= n; ++i) os << ",x" << i;
  os << ",err\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    os << k;
    for (Eigen::Index i = 0; i < n; ++i) {
      os << ',' << format_real(trace.iterates[k][i]);
    }
    os << ',';
    if (k < trace.errors.size()) os << format_real(trace.errors[k]);
    os << '\n';
  }
  return os.str();
}

}  // namespace polyproj
