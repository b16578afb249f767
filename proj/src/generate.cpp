#include "polyproj/generate.hpp"

#include <cmath>

#include "polyproj/error.hpp"

namespace polyproj {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vector random_unit(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

Vector random_point(Rng& rng, int dim, double radius) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = uniform(rng, -radius, radius);
  return v;
}

std::pair<Vector, Vector> random_normal_pair(Rng& rng, int dim, PairTag tag) {
  if (dim < 2) {
    throw Error(ErrorKind::InvalidArgument, "random_normal_pair: dim < 2");
  }
  const Vector zero = Vector::Zero(dim);
  auto scale = [&rng] { return uniform(rng, 0.5, 3.0); };

  switch (tag) {
    case PairTag::BothZero:
      return {zero, zero};
    case PairTag::FirstZero:
      return {zero, scale() * random_unit(rng, dim)};
    case PairTag::SecondZero:
      return {scale() * random_unit(rng, dim), zero};
    case PairTag::DependentPositive:
    case PairTag::DependentNegative: {
      const Vector u1 = scale() * random_unit(rng, dim);
      const double t = uniform(rng, 0.5, 3.0) / u1.norm() *
                       (tag == PairTag::DependentPositive ? 1.0 : -1.0);
      return {u1, t * u1};
    }
    case PairTag::IndependentOrthogonal: {
      const Vector u1 = random_unit(rng, dim);
      Vector w;
      do {
        w = random_unit(rng, dim);
        w -= w.dot(u1) * u1;
      } while (w.norm() < 1e-3);
      w /= w.norm();
      return {scale() * u1, scale() * w};
    }
    case PairTag::IndependentPositive:
    case PairTag::IndependentNegative: {
      const Vector u1 = random_unit(rng, dim);
      Vector u2;
      double c = 0.0;
      do {
        u2 = random_unit(rng, dim);
        c = u1.dot(u2);
      } while (std::abs(c) > kMaxIndependentCosine || std::abs(c) < 1e-3);
      const bool want_positive = tag == PairTag::IndependentPositive;
      if ((c > 0) != want_positive) u2 = -u2;
      return {scale() * u1, scale() * u2};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "random_normal_pair: unknown tag");
}

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::PairHalfspace: return "pair_halfspace";
    case InstanceKind::HyperplaneHalfspace: return "hyperplane_halfspace";
    case InstanceKind::HyperplaneSystem: return "hyperplane_system";
  }
  return "unknown";
}

std::optional<InstanceKind> instance_kind_from_string(const std::string& name) {
  for (auto k : {InstanceKind::PairHalfspace, InstanceKind::HyperplaneHalfspace,
                 InstanceKind::HyperplaneSystem}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

PairTag draw_pair_tag(Rng& rng, InstanceKind kind) {
  const double r = uniform(rng, 0.0, 1.0);
  const double orth_end = kind == InstanceKind::PairHalfspace ? 0.2 : 0.3;
  const double neg_end = kind == InstanceKind::PairHalfspace ? 0.6 : 0.65;
  if (r < 0.05) return PairTag::DependentPositive;
  if (r < 0.1) return PairTag::DependentNegative;
  if (r < orth_end) return PairTag::IndependentOrthogonal;
  if (r < neg_end) return PairTag::IndependentNegative;
  return PairTag::IndependentPositive;
}

Instance generate_instance(InstanceKind kind, int dim, std::uint64_t seed,
                           int point_count) {
  if (dim < 2) {
    throw Error(ErrorKind::InvalidArgument, "generate_instance: dim must be >= 2");
  }
  Rng rng(seed);
  Instance inst;
  inst.dim = dim;

  if (kind == InstanceKind::HyperplaneSystem) {
    const PairTag tag = uniform(rng, 0.0, 1.0) < 0.5
                            ? PairTag::IndependentPositive
                            : PairTag::IndependentNegative;
    auto [u1, u2] = random_normal_pair(rng, dim, tag);
    const double e1 = uniform(rng, -2.0, 2.0);
    const double e2 = uniform(rng, -2.0, 2.0);
    const double a = uniform(rng, -2.0, 2.0);
    const double b = uniform(rng, -2.0, 2.0);
    Vector u3 = a * u1 + b * u2;
    inst.sets.emplace_back(Hyperplane{u1, e1});
    inst.sets.emplace_back(Hyperplane{u2, e2});
    inst.sets.emplace_back(Hyperplane{std::move(u3), a * e1 + b * e2});
  } else {
    const PairTag tag = draw_pair_tag(rng, kind);
    auto [u1, u2] = random_normal_pair(rng, dim, tag);
    const double e1 = uniform(rng, -2.0, 2.0);
    const double e2 = uniform(rng, -2.0, 2.0);
    if (kind == InstanceKind::PairHalfspace) {
      inst.sets.emplace_back(Halfspace{std::move(u1), e1});
    } else {
      inst.sets.emplace_back(Hyperplane{std::move(u1), e1});
    }
    inst.sets.emplace_back(Halfspace{std::move(u2), e2});
  }

  for (int i = 0; i < point_count; ++i) {
    inst.points.push_back(random_point(rng, dim, 3.0));
  }
  return inst;
}

}  // namespace polyproj

#include "polyproj/closed_form.hpp"

namespace polyproj {

PairSetup random_pair_for_behavior(Rng& rng, int dim, BehaviorTag tag) {
  static constexpr PairTag kExactTags[] = {PairTag::DependentPositive,
                                           PairTag::DependentNegative,
                                           PairTag::IndependentOrthogonal};
  auto pick_exact = [&rng] {
    return kExactTags[std::uniform_int_distribution<int>(0, 2)(rng)];
  };

  bool plane_first = false;
  PairTag pair_tag = PairTag::IndependentNegative;
  switch (tag) {
    case BehaviorTag::ExactComposition:
      pair_tag = pick_exact();
      break;
    case BehaviorTag::ExactBothOrders:
      plane_first = true;
      pair_tag = pick_exact();
      break;
    case BehaviorTag::OneStepFeasible:
      pair_tag = PairTag::IndependentPositive;
      break;
    case BehaviorTag::LinearRateBAM:
      plane_first = uniform(rng, 0.0, 1.0) < 0.5;
      if (plane_first && uniform(rng, 0.0, 1.0) < 0.5) {
        pair_tag = PairTag::IndependentPositive;
      }
      break;
  }

  auto [u1, u2] = random_normal_pair(rng, dim, pair_tag);
  const Tolerances tol;
  for (;;) {
    const double e1 = uniform(rng, -2.0, 2.0);
    const double e2 = uniform(rng, -2.0, 2.0);
    PairSetup s{plane_first ? Constraint{Hyperplane{u1, e1}}
                            : Constraint{Halfspace{u1, e1}},
                Halfspace{u2, e2}, random_point(rng, dim, 3.0)};
    if (pair_tag == PairTag::DependentPositive ||
        pair_tag == PairTag::DependentNegative) {
      const DependentCase c =
          plane_first
              ? classify_dependent_hyperplane_halfspace(
                    std::get<Hyperplane>(s.first), Halfspace{u2, e2}, tol)
              : classify_dependent_halfspace_pair(std::get<Halfspace>(s.first),
                                                  Halfspace{u2, e2}, tol);
      if (is_empty(c)) continue;
    }
    return s;
  }
}

}  // namespace polyproj
