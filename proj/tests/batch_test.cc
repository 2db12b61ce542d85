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
#include "fpdyn/batch.h"

#include <gtest/gtest.h>

#include "fpdyn/builtin_games.h"
#include "fpdyn/error.h"

namespace fpdyn {
namespace {

TEST(BatchTest, ParallelMatchesSerial) {
  const BimatrixGame g = Section5Game();
  const std::vector<MixedProfile> starts = RandomStarts(3, 3, 16, 5);
  const auto serial = SimulateBatchSerial(g, starts, 1e4);
  for (int workers : {1, 2, 4}) {
    const auto parallel = SimulateBatch(g, starts, 1e4, {}, workers);
    ASSERT_EQ(parallel.size(), serial.size());
    for (size_t k = 0; k < serial.size(); ++k) {
      EXPECT_EQ(parallel[k].final_state.p, serial[k].final_state.p);
      EXPECT_EQ(parallel[k].final_state.q, serial[k].final_state.q);
      EXPECT_EQ(parallel[k].average_payoffs, serial[k].average_payoffs);
      EXPECT_EQ(parallel[k].segments, serial[k].segments);
      EXPECT_TRUE(parallel[k].error.empty());
    }
  }
}

TEST(BatchTest, MatchesIndividualRuns) {
  const BimatrixGame g = BetaFamilyGame(0.2);
  const std::vector<MixedProfile> starts = GridStarts(3, 3, 3);
  const auto batch = SimulateBatch(g, starts, 1e3);
  for (size_t k = 0; k < starts.size(); ++k) {
    const Trajectory traj = Simulate(g, starts[k], 1e3);
    EXPECT_EQ(batch[k].average_payoffs, traj.AveragePayoffAt(1e3));
    EXPECT_EQ(batch[k].segments, static_cast<int64_t>(traj.segments().size()));
  }
}

TEST(BatchTest, StartGenerators) {
  const auto grid = GridStarts(3, 3, 4);
  EXPECT_EQ(grid.size(), 16u);
  for (const auto& s : grid) {
    EXPECT_GT(s.p.minCoeff(), 0.0);
    EXPECT_GT(s.q.minCoeff(), 0.0);
    EXPECT_NEAR(s.p.sum(), 1.0, 1e-15);
  }
  const auto r1 = RandomStarts(3, 4, 5, 9), r2 = RandomStarts(3, 4, 5, 9);
  ASSERT_EQ(r1.size(), 5u);
  EXPECT_EQ(r1[3].q, r2[3].q);
  EXPECT_EQ(r1[3].q.size(), 4);
  EXPECT_GE(ResolveWorkers(0), 1);
  EXPECT_EQ(ResolveWorkers(3), 3);
}

TEST(BatchTest, RejectsDegenerateGame) {
  const BimatrixGame g(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2));
  EXPECT_THROW(SimulateBatch(g, GridStarts(2, 2, 2), 10.0), Error);
}

}  // namespace
}  // namespace fpdyn
