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
#include "fpdyn/game.h"

#include <gtest/gtest.h>

#include "fpdyn/builtin_games.h"
#include "fpdyn/error.h"
#include "fpdyn/random.h"

namespace fpdyn {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<int>(xs.size()));
  int k = 0;
  for (double x : xs) v[k++] = x;
  return v;
}

TEST(GameTest, PurePayoffsOfPrisonersDilemma) {
  const BimatrixGame g = PrisonersDilemma();
  const auto [a, b] = Payoff(g, MixedProfile::Pure(2, 2, 1, 0));
  EXPECT_EQ(a, 5.0);
  EXPECT_EQ(b, 0.0);
}

TEST(GameTest, MixedPayoffIsBilinear) {
  const BimatrixGame g = BuiltinGame("section5");
  Rng rng(SplitSeed(11, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd p1 = SampleSimplex(rng, 3), p2 = SampleSimplex(rng, 3);
    const Eigen::VectorXd q = SampleSimplex(rng, 3);
    const double lambda = Uniform(rng, 0.0, 1.0);
    const Eigen::VectorXd p = lambda * p1 + (1 - lambda) * p2;
    const auto mixed = Payoff(g, MixedProfile::Make(p, q));
    const auto one = Payoff(g, MixedProfile::Make(p1, q));
    const auto two = Payoff(g, MixedProfile::Make(p2, q));
    EXPECT_NEAR(mixed.first, lambda * one.first + (1 - lambda) * two.first,
                1e-12);
    EXPECT_NEAR(mixed.second, lambda * one.second + (1 - lambda) * two.second,
                1e-12);
  }
}

TEST(GameTest, BestResponseAgainstMixedStrategy) {
  const BimatrixGame g = ShapleyGame();
  // A q = q for the identity matrix.
  const MixedProfile s = MixedProfile::Make(Vec({0.2, 0.3, 0.5}),
                                            Vec({0.5, 0.3, 0.2}));
  const RegionIndex br = BestResponse(g, s);
  EXPECT_EQ(br.a, std::vector<int>{0});
  // p B = (p_3, p_1, p_2).
  EXPECT_EQ(br.b, std::vector<int>{0});
  EXPECT_DOUBLE_EQ(MaxPayoff(g, Player::kA, s.q), 0.5);
  EXPECT_DOUBLE_EQ(MaxPayoff(g, Player::kB, s.p), 0.5);
}

TEST(GameTest, TiesAreReported) {
  const BimatrixGame g = ShapleyGame();
  const Eigen::VectorXd u = Vec({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const RegionIndex br = BestResponse(g, MixedProfile::Make(u, u));
  EXPECT_EQ(br.a.size(), 3u);
  EXPECT_EQ(br.b.size(), 3u);
  EXPECT_FALSE(br.IsSingleton());
}

TEST(GameTest, RegionAgreesWithBestResponse) {
  for (const std::string& key : BuiltinKeys()) {
    const BimatrixGame g = BuiltinGame(key);
    Rng rng(SplitSeed(3, 0));
    for (int trial = 0; trial < 100; ++trial) {
      const MixedProfile s = MixedProfile::Make(SampleSimplex(rng, g.rows()),
                                                SampleSimplex(rng, g.cols()));
      EXPECT_EQ(RegionOf(g, s), BestResponse(g, s)) << key;
    }
  }
}

TEST(GameTest, MaxPayoffDominatesMixedPayoff) {
  const BimatrixGame g = BuiltinGame("beta:0.5");
  Rng rng(SplitSeed(5, 0));
  for (int trial = 0; trial < 500; ++trial) {
    const MixedProfile s =
        MixedProfile::Make(SampleSimplex(rng, 3), SampleSimplex(rng, 3));
    const auto [a, b] = Payoff(g, s);
    EXPECT_GE(MaxPayoff(g, Player::kA, s.q), a - 1e-12);
    EXPECT_GE(MaxPayoff(g, Player::kB, s.p), b - 1e-12);
  }
  // Equality when the support lies inside the best-response set.
  const MixedProfile pure = MixedProfile::Pure(3, 3, 1, 1);
  const RegionIndex br = BestResponse(g, pure);
  const MixedProfile reply = MixedProfile::Pure(3, 3, br.a[0], 1);
  EXPECT_DOUBLE_EQ(Payoff(g, reply).first, MaxPayoff(g, Player::kA, reply.q));
}

TEST(GameTest, ValidatesInput) {
  EXPECT_THROW(BimatrixGame(Eigen::MatrixXd::Zero(2, 3),
                            Eigen::MatrixXd::Zero(3, 2)),
               Error);
  EXPECT_THROW(BimatrixGame(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0)),
               Error);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(BimatrixGame(bad, bad), Error);

  const BimatrixGame g = PrisonersDilemma();
  EXPECT_THROW(Payoff(g, MixedProfile::Make(Vec({0.5, 0.5}),
                                            Vec({0.2, 0.3, 0.5}))),
               Error);
  EXPECT_THROW(MixedProfile::Make(Vec({0.6, 0.6}), Vec({0.5, 0.5})), Error);
  EXPECT_THROW(MixedProfile::Make(Vec({1.1, -0.1}), Vec({0.5, 0.5})), Error);
}

TEST(GameTest, NearSimplexInputIsRenormalised) {
  const Eigen::VectorXd x = NormalizeSimplexPoint(Vec({0.5 + 1e-11, 0.5}));
  EXPECT_DOUBLE_EQ(x.sum(), 1.0);
  try {
    NormalizeSimplexPoint(Vec({0.5, 0.4}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(GameTest, GenericityCheck) {
  for (const std::string& key : BuiltinKeys()) {
    EXPECT_FALSE(CheckGenericity(BuiltinGame(key)).degenerate) << key;
  }
  // Duplicated rows tie for every belief.
  Eigen::MatrixXd a(2, 2);
  a << 1, 0,
       1, 0;
  Eigen::MatrixXd b(2, 2);
  b << 1, 0,
       0, 1;
  const GenericityReport report = CheckGenericity(BimatrixGame(a, b));
  EXPECT_TRUE(report.degenerate);
  EXPECT_GT(report.tie_fraction_a, 0.99);
  EXPECT_FALSE(report.reason.empty());
}

TEST(GameTest, GenericityIsDeterministic) {
  Rng rng(SplitSeed(9, 0));
  const BimatrixGame g(SampleMatrix(rng, 3, 3), SampleMatrix(rng, 3, 3));
  const GenericityReport r1 = CheckGenericity(g, 42), r2 = CheckGenericity(g, 42);
  EXPECT_EQ(r1.degenerate, r2.degenerate);
  EXPECT_EQ(r1.tie_fraction_a, r2.tie_fraction_a);
  EXPECT_EQ(r1.tie_fraction_b, r2.tie_fraction_b);
}

}  // namespace
}  // namespace fpdyn
