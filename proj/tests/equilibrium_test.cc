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
#include "fpdyn/equilibrium.h"

#include <gtest/gtest.h>

#include "fpdyn/builtin_games.h"
#include "fpdyn/equivalence.h"
#include "fpdyn/error.h"
#include "fpdyn/random.h"

namespace fpdyn {
namespace {

JointDistribution RandomJoint(Rng& rng, int m, int n) {
  const Eigen::VectorXd flat = SampleSimplex(rng, m * n);
  return JointDistribution(Eigen::Map<const Eigen::MatrixXd>(flat.data(), m, n));
}

TEST(InteriorNashTest, BetaFamilyIsUniform) {
  for (double beta : {0.0, 0.2, 0.5, 0.8}) {
    const auto nash = InteriorNash(BetaFamilyGame(beta));
    ASSERT_TRUE(nash.has_value());
    EXPECT_TRUE(nash->completely_mixed);
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(nash->profile.p[k], 1.0 / 3, 1e-12);
      EXPECT_NEAR(nash->profile.q[k], 1.0 / 3, 1e-12);
    }
    EXPECT_NEAR(nash->payoff_a, (1 + beta) / 3, 1e-12);
    EXPECT_NEAR(nash->payoff_b, (1 - beta) / 3, 1e-12);
  }
}

TEST(InteriorNashTest, MatchingPennies) {
  const auto nash = InteriorNash(MatchingPennies());
  ASSERT_TRUE(nash.has_value());
  EXPECT_NEAR(nash->profile.p[0], 0.5, 1e-12);
  EXPECT_NEAR(nash->profile.q[1], 0.5, 1e-12);
  EXPECT_NEAR(nash->payoff_a, 0.0, 1e-12);
  EXPECT_NEAR(nash->payoff_b, 0.0, 1e-12);
}

TEST(InteriorNashTest, EqualisesPayoffs) {
  Rng rng(SplitSeed(17, 0));
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const BimatrixGame g(SampleMatrix(rng, 3, 3), SampleMatrix(rng, 3, 3));
    const auto nash = InteriorNash(g);
    if (!nash) continue;
    ++found;
    const Eigen::VectorXd aq = g.a() * nash->profile.q;
    const Eigen::VectorXd pb = g.b().transpose() * nash->profile.p;
    EXPECT_LT(aq.maxCoeff() - aq.minCoeff(), 1e-9);
    EXPECT_LT(pb.maxCoeff() - pb.minCoeff(), 1e-9);
    EXPECT_GT(nash->profile.p.minCoeff(), 0.0);
    EXPECT_GT(nash->profile.q.minCoeff(), 0.0);
    // A Nash product is a correlated equilibrium.
    const JointDistribution dist =
        JointDistribution::Product(nash->profile.p, nash->profile.q);
    EXPECT_TRUE(EquilibriumMembership(g, dist, EquilibriumKind::kCorrelated));
  }
  EXPECT_GT(found, 0);
}

TEST(InteriorNashTest, AbsentForDominanceSolvableGame) {
  EXPECT_FALSE(InteriorNash(PrisonersDilemma()).has_value());
  const auto pure = PureNashEquilibria(PrisonersDilemma());
  ASSERT_EQ(pure.size(), 1u);
  EXPECT_EQ(pure[0].profile.p[1], 1.0);
  EXPECT_EQ(pure[0].profile.q[1], 1.0);
  EXPECT_EQ(pure[0].payoff_a, 1.0);
}

TEST(InteriorNashTest, RejectsNonSquare) {
  const BimatrixGame g(Eigen::MatrixXd::Ones(2, 3), Eigen::MatrixXd::Ones(2, 3));
  try {
    InteriorNash(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(RegretTest, PrisonersDilemmaCooperation) {
  // Everyone cooperates: defecting gains 5 - 3 for each player.
  const JointDistribution dist = JointDistribution::Product(
      Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0));
  const RegretReport r = Regret(PrisonersDilemma(), dist);
  EXPECT_DOUBLE_EQ(r.external_a[0], 0.0);
  EXPECT_DOUBLE_EQ(r.external_a[1], 2.0);
  EXPECT_DOUBLE_EQ(r.external_b[1], 2.0);
  EXPECT_DOUBLE_EQ(r.internal_a(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(r.internal_a(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(r.max_external, 2.0);
  EXPECT_FALSE(EquilibriumMembership(PrisonersDilemma(), dist,
                                     EquilibriumKind::kCoarseCorrelated));
}

TEST(RegretTest, ExternalIsSumOfInternal) {
  // external(i') = sum_i internal(i, i'), so every CE is a CCE.
  const BimatrixGame g = BuiltinGame("section5");
  Rng rng(SplitSeed(23, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const RegretReport r = Regret(g, RandomJoint(rng, 3, 3));
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(r.external_a[k], r.internal_a.col(k).sum(), 1e-12);
      EXPECT_NEAR(r.external_b[k], r.internal_b.col(k).sum(), 1e-12);
      EXPECT_EQ(r.internal_a(k, k), 0.0);
    }
    EXPECT_LE(r.max_external, 3 * std::max(r.max_internal, 0.0) + 1e-12);
  }
}

TEST(RegretTest, HierarchyOnRandomDistributions) {
  // Mixtures of the Nash product with noise: some are CE, most are not.
  const BimatrixGame g = BuiltinGame("beta:0.5");
  const auto nash = InteriorNash(g);
  const Eigen::MatrixXd product =
      JointDistribution::Product(nash->profile.p, nash->profile.q).matrix();
  Rng rng(SplitSeed(29, 0));
  int correlated = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double lambda = Uniform(rng, 0.9, 1.0);
    const JointDistribution dist(lambda * product +
                                 (1 - lambda) * RandomJoint(rng, 3, 3).matrix());
    if (EquilibriumMembership(g, dist, EquilibriumKind::kCorrelated, 1e-3)) {
      ++correlated;
      EXPECT_TRUE(EquilibriumMembership(
          g, dist, EquilibriumKind::kCoarseCorrelated, 1e-3));
    }
  }
  EXPECT_GT(correlated, 0);
}

TEST(RegretTest, ScalesUnderLinearEquivalence) {
  const BimatrixGame g = BuiltinGame("shapley");
  LinearTransform t = LinearTransform::Identity(3, 3);
  t.c = 2.5;
  t.d = 0.5;
  t.col_shifts = Eigen::Vector3d(1, -2, 0.3);
  t.row_shifts = Eigen::Vector3d(-1, 4, 2);
  const BimatrixGame h = ApplyTransform(g, t);
  Rng rng(SplitSeed(31, 0));
  for (int trial = 0; trial < 50; ++trial) {
    const JointDistribution dist = RandomJoint(rng, 3, 3);
    const RegretReport r1 = Regret(g, dist), r2 = Regret(h, dist);
    EXPECT_LT((r2.external_a - t.c * r1.external_a).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r2.external_b - t.d * r1.external_b).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r2.internal_a - t.c * r1.internal_a).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((r2.internal_b - t.d * r1.internal_b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(JointDistributionTest, Validation) {
  EXPECT_THROW(JointDistribution(Eigen::MatrixXd::Ones(2, 2)), Error);
  Eigen::MatrixXd neg(1, 2);
  neg << 1.5, -0.5;
  EXPECT_THROW(JointDistribution{neg}, Error);
  const JointDistribution d =
      JointDistribution::FromOccupancy(Eigen::MatrixXd::Constant(2, 2, 3.0));
  EXPECT_DOUBLE_EQ(d.matrix()(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(d.RowMarginal()[1], 0.5);
}

}  // namespace
}  // namespace fpdyn
