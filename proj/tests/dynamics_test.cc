// Copyright 2026 The fpdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "fpdyn/dynamics.h"

#include <cmath>

#include <gtest/gtest.h>

#include "fpdyn/batch.h"
#include "fpdyn/builtin_games.h"
#include "fpdyn/equilibrium.h"
#include "fpdyn/error.h"
#include "fpdyn/random.h"
#include "fpdyn/reference_integrator.h"

namespace fpdyn {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

Segment MakeSegment(Eigen::VectorXd p, Eigen::VectorXd q, int i, int j,
                    double t_start, double t_end) {
  Segment s;
  s.t_start = t_start;
  s.t_end = t_end;
  s.i = i;
  s.j = j;
  s.p_start = std::move(p);
  s.q_start = std::move(q);
  return s;
}

// Explicit Euler on dx/dt = (e_k - x) / t, used as an independent oracle for
// the closed form.
Eigen::VectorXd EulerTowards(Eigen::VectorXd x, int k, double t0, double t1) {
  const int steps = 200000;
  const double h = std::log(t1 / t0) / steps;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd drift = -x;
    drift[k] += 1.0;
    x += h * drift;
  }
  return x;
}

TEST(SegmentStateTest, VertexIsFixed) {
  const Segment s = MakeSegment(Vec({0, 1, 0}), Vec({0, 0, 1}), 1, 2, 2.0, 50.0);
  const MixedProfile x = SegmentState(s, 17.0);
  EXPECT_EQ(x.p, Vec({0, 1, 0}));
  EXPECT_EQ(x.q, Vec({0, 0, 1}));
}

TEST(SegmentStateTest, ClosedFormMatchesIntegration) {
  const Segment s = MakeSegment(Vec({1, 0, 0}), Vec({1.0 / 3, 1.0 / 3, 1.0 / 3}),
                                1, 0, 4.0, 20.0);
  const MixedProfile half = SegmentState(s, 8.0);
  EXPECT_NEAR(half.p[0], 0.5, 1e-15);
  EXPECT_NEAR(half.p[1], 0.5, 1e-15);
  EXPECT_NEAR(half.p[2], 0.0, 1e-15);

  const MixedProfile third = SegmentState(s, 12.0);
  EXPECT_NEAR(third.q[0], 7.0 / 9, 1e-15);
  EXPECT_NEAR(third.q[1], 1.0 / 9, 1e-15);
  EXPECT_NEAR(third.q[2], 1.0 / 9, 1e-15);

  const Eigen::VectorXd p_euler = EulerTowards(s.p_start, 1, 4.0, 8.0);
  const Eigen::VectorXd q_euler = EulerTowards(s.q_start, 0, 4.0, 12.0);
  EXPECT_LT((p_euler - half.p).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_LT((q_euler - third.q).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(SegmentStateTest, OutOfRange) {
  const Segment s = MakeSegment(Vec({1, 0}), Vec({0, 1}), 0, 0, 2.0, 3.0);
  try {
    SegmentState(s, 3.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutOfRange);
  }
  EXPECT_THROW(SegmentState(s, 1.5), Error);
}

TEST(NextCrossingTest, PrisonersDilemmaHasNone) {
  const BimatrixGame g = PrisonersDilemma();
  for (const MixedProfile& start : GridStarts(2, 2, 5)) {
    SegmentStart seg{1.0, 1, 1, start.p, start.q};
    EXPECT_FALSE(NextCrossing(g, seg, 1e6).t_cross.has_value());
  }
}

TEST(NextCrossingTest, SingleSwitchForBetaFamily) {
  const BimatrixGame g = BetaFamilyGame(0.5);
  const Eigen::VectorXd p = Vec({0.9, 0.05, 0.05}), q = p;
  const RegionIndex region = RegionOf(g, MixedProfile::Make(p, q));
  ASSERT_TRUE(region.IsSingleton());
  const SegmentStart seg{1.0, region.a[0], region.b[0], p, q};
  const Crossing c = NextCrossing(g, seg, 1e6);
  ASSERT_TRUE(c.t_cross.has_value());
  EXPECT_FALSE(c.non_generic);
  EXPECT_FALSE(c.immediate);

  const Segment s = MakeSegment(p, q, seg.i, seg.j, 1.0, *c.t_cross);
  const double eps = 1e-7 * *c.t_cross;
  const RegionIndex before = RegionOf(g, SegmentState(s, *c.t_cross - eps));
  Segment after_seg = s;
  after_seg.t_end = *c.t_cross + 1.0;  // extend along the same play
  const RegionIndex after = RegionOf(g, SegmentState(after_seg, *c.t_cross + eps));
  EXPECT_EQ(before, region);
  const int changed = (before.a != after.a) + (before.b != after.b);
  EXPECT_EQ(changed, 1);
  EXPECT_EQ(after, c.new_region);

  // Dense fixed-step integration switches at the same time.
  double t_switch = 0.0;
  ReferenceIntegrate(g, MixedProfile::Make(p, q), 2.0 * *c.t_cross, 1e-6,
                     [&](double t, const Eigen::VectorXd& pp,
                         const Eigen::VectorXd& qq) {
                       if (t_switch == 0.0 &&
                           !(RegionOf(g, MixedProfile::Make(pp, qq)) == region))
                         t_switch = t;
                     });
  EXPECT_NEAR(t_switch, *c.t_cross, 1e-4 * *c.t_cross);
}

void CheckInvariants(const Trajectory& traj) {
  const BimatrixGame& g = traj.game();
  EXPECT_NEAR(traj.occupancy().sum(), traj.t_now(), 1e-10 * traj.t_now());
  const double integral_a = (g.a().array() * traj.occupancy().array()).sum();
  const double integral_b = (g.b().array() * traj.occupancy().array()).sum();
  // The [0, 1) window contributes the mixed product p q^T to the occupancy,
  // so the identity is exact there too.
  EXPECT_NEAR(integral_a, traj.payoff_integral_a(),
              1e-10 * std::max(1.0, std::abs(traj.payoff_integral_a())));
  EXPECT_NEAR(integral_b, traj.payoff_integral_b(),
              1e-10 * std::max(1.0, std::abs(traj.payoff_integral_b())));

  double last = 1.0;
  for (const Segment& s : traj.segments()) {
    EXPECT_EQ(s.t_start, last);
    EXPECT_GT(s.t_end, s.t_start);
    last = s.t_end;
    for (double t : {s.t_start, std::sqrt(s.t_start * s.t_end), s.t_end}) {
      const MixedProfile x = SegmentState(s, t);
      EXPECT_NEAR(x.p.sum(), 1.0, 1e-12);
      EXPECT_NEAR(x.q.sum(), 1.0, 1e-12);
      EXPECT_GE(x.p.minCoeff(), -1e-12);
      EXPECT_GE(x.q.minCoeff(), -1e-12);
    }
  }
  EXPECT_EQ(last, traj.t_now());
}

TEST(SimulateTest, InvariantsOnBuiltinGames) {
  for (const std::string& key : BuiltinKeys()) {
    const BimatrixGame g = BuiltinGame(key);
    for (const MixedProfile& start : RandomStarts(g.rows(), g.cols(), 3, 5)) {
      const Trajectory traj = Simulate(g, start, 1e4);
      SCOPED_TRACE(key);
      EXPECT_FALSE(traj.truncated());
      EXPECT_EQ(traj.t_now(), 1e4);
      CheckInvariants(traj);
    }
  }
}

TEST(SimulateTest, PrisonersDilemmaConvergesToDefection) {
  const BimatrixGame g = PrisonersDilemma();
  for (const MixedProfile& start : GridStarts(2, 2, 5)) {
    const Trajectory traj = Simulate(g, start, 1e4);
    const MixedProfile end = traj.StateAt(1e4);
    EXPECT_NEAR(end.p[1], 1.0, 1e-3);
    EXPECT_NEAR(end.q[1], 1.0, 1e-3);
    EXPECT_EQ(traj.segments().size(), 1u);
  }
}

TEST(SimulateTest, BetaFamilyBeatsNash) {
  const double beta = 0.5;
  const BimatrixGame g = BetaFamilyGame(beta);
  const MixedProfile start = MixedProfile::Make(Vec({0.5, 0.3, 0.2}),
                                                Vec({0.2, 0.3, 0.5}));
  const Trajectory traj = Simulate(g, start, 1e5);
  const auto [ra, rb] = traj.AveragePayoffAt(1e5);
  EXPECT_GT(ra, (1 + beta) / 3);
  EXPECT_GT(rb, (1 - beta) / 3);
}

TEST(SimulateTest, StationaryAtNash) {
  const BimatrixGame g = BuiltinGame("section5");
  const auto nash = InteriorNash(g);
  ASSERT_TRUE(nash.has_value());
  const Trajectory traj = Simulate(g, nash->profile, 1e5);
  EXPECT_TRUE(traj.stationary());
  for (double t : {1.0, 10.0, 1e3, 1e5}) {
    const auto [ra, rb] = traj.AveragePayoffAt(t);
    EXPECT_NEAR(ra, nash->payoff_a, 1e-12);
    EXPECT_NEAR(rb, nash->payoff_b, 1e-12);
    const auto [ga, gb] = BeliefGap(traj, t);
    EXPECT_NEAR(ga, 0.0, 1e-12);
    EXPECT_NEAR(gb, 0.0, 1e-12);
  }
}

TEST(SimulateTest, RejectsDegenerateGame) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0,
       1, 0;
  const BimatrixGame g(a, a.transpose());
  try {
    Simulate(g, MixedProfile::Make(Vec({0.5, 0.5}), Vec({0.3, 0.7})), 10.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(SimulateTest, RejectsBadHorizon) {
  const BimatrixGame g = ShapleyGame();
  const MixedProfile start = MixedProfile::Make(Vec({0.5, 0.3, 0.2}),
                                                Vec({0.2, 0.3, 0.5}));
  EXPECT_THROW(Simulate(g, start, 1.0), Error);
  const Trajectory traj = Simulate(g, start, 10.0);
  EXPECT_THROW(traj.StateAt(11.0), Error);
  EXPECT_THROW(traj.StateAt(0.5), Error);
  EXPECT_THROW(BeliefGap(traj, 20.0), Error);
}

TEST(SimulateTest, EventCapTruncates) {
  const BimatrixGame g = ShapleyGame();
  const MixedProfile start = MixedProfile::Make(Vec({0.5, 0.3, 0.2}),
                                                Vec({0.2, 0.3, 0.5}));
  SimulationOptions options;
  options.max_events = 5;
  const Trajectory traj = Simulate(g, start, 1e6, options);
  EXPECT_TRUE(traj.truncated());
  EXPECT_EQ(traj.termination(), Termination::kEventCap);
  EXPECT_LT(traj.t_now(), 1e6);
  CheckInvariants(traj);
}

TEST(BeliefGapTest, ScaledGapIsConstant) {
  for (const std::string& key : BuiltinKeys()) {
    const BimatrixGame g = BuiltinGame(key);
    const MixedProfile start = RandomStarts(g.rows(), g.cols(), 1, 77)[0];
    const Trajectory traj = Simulate(g, start, 1e4);
    const auto [ga1, gb1] = BeliefGap(traj, 1.0);
    for (double t : {10.0, 1e2, 1e3, 1e4}) {
      const auto [ga, gb] = BeliefGap(traj, t);
      EXPECT_NEAR(t * ga, ga1, 1e-8 * std::max(1.0, std::abs(ga1))) << key;
      EXPECT_NEAR(t * gb, gb1, 1e-8 * std::max(1.0, std::abs(gb1))) << key;
    }
  }
}

TEST(BeliefGapTest, EmpiricalMarginalsMatchBeliefs) {
  const BimatrixGame g = BuiltinGame("beta:0.2");
  const Trajectory traj = Simulate(g, RandomStarts(3, 3, 1, 4)[0], 1e3);
  const JointDistribution d = traj.EmpiricalDistribution();
  const MixedProfile end = traj.StateAt(1e3);
  EXPECT_LT((d.RowMarginal() - end.p).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((d.ColMarginal() - end.q).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ReferenceTest, ConvergesToEventDrivenOrbit) {
  // The Euler error is first order in the step and grows with the number of
  // switches, so from an arbitrary start the check is convergence in h.
  // beta:0.8 is excluded: its orbit is sensitive to 1e-9 perturbations.
  for (const std::string key :
       {"shapley", "beta:0.2", "beta:0.5", "section5", "prisoners",
        "matching-pennies"}) {
    const BimatrixGame g = BuiltinGame(key);
    const MixedProfile start = RandomStarts(g.rows(), g.cols(), 1, 99)[0];
    const Trajectory traj = Simulate(g, start, 100.0);
    const double coarse = ReferenceSupDistance(traj, 100.0, 1e-5);
    const double fine = ReferenceSupDistance(traj, 100.0, 1e-6);
    EXPECT_LT(fine, 5e-3) << key;
    EXPECT_TRUE(fine < 0.3 * coarse || coarse < 1e-6)
        << key << ": " << coarse << " -> " << fine;
  }
}

TEST(EpochCheckpointsTest, LogSpacedAndEndsAtHorizon) {
  const std::vector<double> c = EpochCheckpoints(5e3, 1);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c.back(), 5e3);
  for (size_t k = 1; k < c.size(); ++k) EXPECT_GT(c[k], c[k - 1]);
  EXPECT_NEAR(c[1], 10.0, 1e-12);
}

}  // namespace
}  // namespace fpdyn
