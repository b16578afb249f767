#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "polyproj/atomic.hpp"
#include "polyproj/closed_form.hpp"
#include "polyproj/error.hpp"
#include "polyproj/generate.hpp"
#include "polyproj/iterate.hpp"
#include "support.hpp"

using namespace polyproj;
using testsupport::v2;

TEST(ComposeIterate, DeskValues) {
  const Halfspace w1{v2(1, 0), 0};
  const Halfspace w2{v2(0, 1), 0};
  IterationTrace tr =
      compose_iterate({projector_for(w1), projector_for(w2)}, v2(2, 3), 1);
  ASSERT_EQ(tr.iterates.size(), 2u);
  EXPECT_LE((tr.iterates[1] - v2(0, 0)).norm(), 1e-12);

  // P_{W2}(1, 2) with W2: x1 + x2 ≤ 0 steps back by (3/2)(1,1).
  const Hyperplane h1{v2(1, 0), 1};
  const Halfspace w{v2(1, 1), 0};
  tr = compose_iterate({projector_for(h1), projector_for(w)}, v2(2, 2), 1);
  EXPECT_LE((tr.iterates[1] - v2(-0.5, 0.5)).norm(), 1e-12);
  EXPECT_LE((tr.iterates[1] - project_halfspace(w, project_hyperplane(h1, v2(2, 2)))).norm(),
            1e-15);

  tr = compose_iterate({projector_for(w1), projector_for(w2)}, v2(-1, -1), 10,
                       v2(-1, -1));
  EXPECT_EQ(tr.stop_reason, StopReason::Converged);
  for (const auto& it : tr.iterates) EXPECT_EQ(it, v2(-1, -1));
  for (double e : tr.errors) EXPECT_EQ(e, 0.0);
}

TEST(ComposeIterate, RejectsBadArguments) {
  EXPECT_THROW(compose_iterate({}, v2(0, 0), 0), Error);
  EXPECT_THROW(compose_iterate({projector_for(Halfspace{v2(0, 0), -1})}, v2(0, 0), 3),
               Error);
}

TEST(Dykstra, DeskValues) {
  IterationTrace tr = dykstra({Halfspace{v2(1, 0), 0}, Halfspace{v2(0, 1), 0}}, v2(2, 3));
  EXPECT_LE((tr.iterates.back() - v2(0, 0)).norm(), 1e-12);
  EXPECT_EQ(tr.stop_reason, StopReason::Converged);

  tr = dykstra({Halfspace{v2(1, 0), 1}, Halfspace{v2(1, 1), 0}}, v2(2, 2));
  const Vector cf = project_halfspace_pair({v2(1, 0), 1}, {v2(1, 1), 0}, v2(2, 2)).point;
  EXPECT_LE((tr.iterates.back() - cf).norm(), 1e-6);
  EXPECT_LE((tr.iterates.back() - v2(0, 0)).norm(), 1e-6);

  tr = dykstra({Halfspace{v2(1, 0), 1}}, v2(2, 0));
  EXPECT_LE((tr.iterates[1] - v2(1, 0)).norm(), 1e-15);
}

TEST(Dykstra, StateStartsWithZeroCorrectionsAndCycles) {
  const std::vector<Constraint> sets{Halfspace{v2(1, 0), 0}, Halfspace{v2(0, 1), 0},
                                     Hyperplane{v2(1, 1), -1}};
  DykstraState s = dykstra_init(sets.size(), v2(2, 3));
  ASSERT_EQ(s.corrections.size(), 3u);
  for (const auto& e : s.corrections) EXPECT_EQ(e.norm(), 0.0);
  dykstra_step(s, sets);  // set 0
  EXPECT_LE((s.x - v2(0, 3)).norm(), 1e-15);
  dykstra_step(s, sets);  // set 1
  EXPECT_LE((s.x - v2(0, 0)).norm(), 1e-15);
  dykstra_step(s, sets);  // set 2: onto x1 + x2 = −1
  EXPECT_LE((s.x - v2(-0.5, -0.5)).norm(), 1e-15);
  EXPECT_EQ(s.k, 3);
  // x_k + Σ e_i stays equal to the starting point.
  Vector sum = s.x;
  for (const auto& e : s.corrections) sum += e;
  EXPECT_LE((sum - v2(2, 3)).norm(), 1e-14);
}

TEST(Dykstra, EmptySetAndTrace) {
  EXPECT_THROW(dykstra({Halfspace{v2(0, 0), -1}}, v2(0, 0)), Error);
  const IterationTrace tr =
      dykstra({Halfspace{v2(1, 0), 0}}, v2(1, 0), 5, 1e-12, v2(0, 0));
  ASSERT_EQ(tr.errors.size(), tr.iterates.size());
  const std::string csv = trace_to_csv(tr);
  std::istringstream in(csv);
  std::string header, row0;
  std::getline(in, header);
  std::getline(in, row0);
  EXPECT_EQ(header, "k,x1,x2,err");
  EXPECT_EQ(row0, "0,1,0,1");
  const std::string bare = trace_to_csv(dykstra({Halfspace{v2(1, 0), 0}}, v2(1, 0)));
  EXPECT_NE(bare.find("\n0,1,0,\n"), std::string::npos);
}

TEST(Dykstra, MatchesClosedFormOnRandomPairs) {
  Rng rng(81);
  for (int t = 0; t < 300; ++t) {
    const BehaviorTag tags[] = {BehaviorTag::ExactComposition, BehaviorTag::LinearRateBAM,
                                BehaviorTag::OneStepFeasible, BehaviorTag::ExactBothOrders};
    const PairSetup s = random_pair_for_behavior(rng, 2 + t % 5, tags[t % 4]);
    const Vector ref =
        kind_of(s.first) == SetKind::Hyperplane
            ? project_hyperplane_halfspace(std::get<Hyperplane>(s.first),
                                           std::get<Halfspace>(s.second), s.x).point
            : project_halfspace_pair(std::get<Halfspace>(s.first),
                                     std::get<Halfspace>(s.second), s.x).point;
    DykstraState state;
    const std::vector<Constraint> sets{s.first, s.second};
    const IterationTrace tr = dykstra(sets, s.x, 10000, 1e-12, ref, &state);
    EXPECT_LE((tr.iterates.back() - ref).norm(), 1e-6) << "trial " << t;
    std::vector<double> lambda, beta;
    dykstra_multipliers(state, sets, lambda, beta);
    for (double l : lambda) EXPECT_GE(l, -1e-9);
  }
}

TEST(RateGamma, DeskValues) {
  EXPECT_EQ(rate_gamma(v2(1, 0), v2(0, 1)), 0.0);
  EXPECT_NEAR(rate_gamma(v2(1, 0), v2(-1, 2)), 1 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(rate_gamma(v2(1, 2), v2(2, 4)), 1.0, 1e-15);
  try {
    rate_gamma(v2(0, 0), v2(1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroNormal);
  }
}

TEST(VerifyBam, IdentityAndNegativeCosine) {
  const Mapping id = [](const Vector& x) { return x; };
  EXPECT_TRUE(verify_bam(id, id, 0.0, {v2(1, 2)}, 1).all_hold());

  const Halfspace w1{v2(1, 0), 1};
  const Halfspace w2{v2(-1, 2), 0};
  const Mapping g = compose({projector_for(w1), projector_for(w2)});
  const Mapping fix = [&](const Vector& y) { return project_halfspace_pair(w1, w2, y).point; };
  Rng rng(91);
  std::vector<Vector> samples;
  for (int i = 0; i < 50; ++i) samples.push_back(random_point(rng, 2, 5));
  const BamReport rep = verify_bam(g, fix, rate_gamma(w1.u, w2.u), samples, 50);
  EXPECT_TRUE(rep.all_hold());
  EXPECT_EQ(rep.samples.size(), samples.size());
}

TEST(VerifyBam, DetectsAViolatedBound) {
  // Claiming rate 0 for a slowly converging composition must fail.
  const Halfspace w1{v2(1, 0), 0};
  const Halfspace w2{v2(-1, 0.2), 0};
  const Mapping g = compose({projector_for(w1), projector_for(w2)});
  const Mapping fix = [&](const Vector& y) { return project_halfspace_pair(w1, w2, y).point; };
  const BamReport rep = verify_bam(g, fix, 0.0, {v2(3, 1)}, 5);
  EXPECT_FALSE(rep.samples[0].rate_bound_holds);
}

TEST(PredictBehavior, Table) {
  const auto hs = SetKind::Halfspace;
  const auto hp = SetKind::Hyperplane;
  EXPECT_EQ(predict_behavior(hs, hs, {PairTag::DependentPositive, 1}).tag,
            BehaviorTag::ExactComposition);
  EXPECT_EQ(predict_behavior(hs, hs, {PairTag::DependentNegative, 1}).tag,
            BehaviorTag::ExactComposition);
  EXPECT_EQ(predict_behavior(hs, hs, {PairTag::IndependentOrthogonal, 0}).tag,
            BehaviorTag::ExactComposition);
  EXPECT_EQ(predict_behavior(hs, hs, {PairTag::IndependentPositive, 0.5}).tag,
            BehaviorTag::OneStepFeasible);
  const BehaviorCase neg = predict_behavior(hs, hs, {PairTag::IndependentNegative, 0.5});
  EXPECT_EQ(neg.tag, BehaviorTag::LinearRateBAM);
  EXPECT_EQ(neg.gamma, 0.5);
  EXPECT_EQ(predict_behavior(hp, hs, {PairTag::IndependentNegative, 0.5}).tag,
            BehaviorTag::LinearRateBAM);
  EXPECT_EQ(predict_behavior(hp, hs, {PairTag::IndependentPositive, 0.5}).tag,
            BehaviorTag::LinearRateBAM);
  EXPECT_EQ(predict_behavior(hs, hp, {PairTag::DependentNegative, 1}).tag,
            BehaviorTag::ExactBothOrders);
  EXPECT_EQ(predict_behavior(hp, hs, {PairTag::IndependentOrthogonal, 0}).tag,
            BehaviorTag::ExactBothOrders);
  EXPECT_EQ(predict_behavior(hs, hs, {PairTag::FirstZero, 0}).tag,
            BehaviorTag::ExactComposition);
}

TEST(Trapping, IteratesStayOffTheSets) {
  Rng rng(101);
  int checked = 0;
  for (int t = 0; t < 20000 && checked < 200; ++t) {
    const int dim = 2 + t % 5;
    auto [u1, u2] = random_normal_pair(
        rng, dim, t % 2 ? PairTag::IndependentPositive : PairTag::IndependentNegative);
    const Hyperplane h{u1, uniform(rng, -2, 2)};
    const Halfspace w{u2, uniform(rng, -2, 2)};
    const Vector x = project_hyperplane(h, random_point(rng, dim, 3));
    if (contains(w, x, 1e-12) != HalfspaceMembership::Outside) continue;
    // Distances shrink like gamma^(2k); keep them far above rounding level.
    if (rate_gamma(u1, u2) < 0.75) continue;
    ++checked;
    Vector y = x;
    for (int k = 1; k <= 20; ++k) {
      y = project_halfspace(w, project_hyperplane(h, y));
      EXPECT_EQ(contains(h, y, 1e-12), HyperplaneMembership::Off) << k;
      EXPECT_EQ(contains(w, project_hyperplane(h, y), 1e-12),
                HalfspaceMembership::Outside)
          << k;
    }
  }
  EXPECT_GE(checked, 100);
}
