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
#include "fpdyn/search.h"

#include <cmath>

#include <gtest/gtest.h>

#include "fpdyn/builtin_games.h"
#include "fpdyn/experiments.h"

namespace fpdyn {
namespace {

SearchConfig SmallConfig() {
  SearchConfig config;
  config.count = 8;
  config.seed = 7;
  config.horizon = 1e6;
  config.starts_per_game = 2;
  return config;
}

void CheckSubNashAlongCycle(const SearchFinding& f) {
  const Trajectory traj = Simulate(f.transformed, f.start, f.horizon);
  const Itinerary it = DetectCycle(traj, f.cycle_tol);
  ASSERT_TRUE(it.periodic);
  const auto [t0, t1] = PeriodWindow(traj, it, 1);
  for (int k = 0; k < 1000; ++k) {
    const double t = t0 * std::pow(t1 / t0, k / 999.0);
    const auto [p_in, q_in] = SubNashMembership(f.transformed, f.nash,
                                                traj.StateAt(t));
    EXPECT_TRUE(p_in) << "t = " << t;
    EXPECT_TRUE(q_in) << "t = " << t;
  }
}

TEST(SearchTest, ZeroCountIsEmpty) {
  SearchConfig config;
  config.count = 0;
  const SearchResult r = SearchSubNash(config);
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(r.accepted, 0);
}

TEST(SearchTest, FindsInjectedSection5Game) {
  SearchConfig config;
  config.count = 0;
  config.injected = {Section5Game()};
  const SearchResult r = SearchSubNash(config);
  ASSERT_EQ(r.findings.size(), 1u);
  const SearchFinding& f = r.findings[0];
  EXPECT_EQ(f.trial, -1);
  EXPECT_EQ(f.itinerary.period_length, 8);
  EXPECT_TRUE(CyclicallyEqual(f.itinerary.Block(), Section5Itinerary()));
  EXPECT_EQ(f.dominance.classification, Dominance::kNashAllTimes);
  std::string reason;
  EXPECT_TRUE(ReverifyFinding(f, &reason)) << reason;
  CheckSubNashAlongCycle(f);
}

TEST(SearchTest, RandomFindingsReverify) {
  const SearchResult r = SearchSubNash(SmallConfig());
  EXPECT_EQ(r.accepted, 8);
  for (const SearchFinding& f : r.findings) {
    SCOPED_TRACE(f.trial);
    EXPECT_EQ(f.dominance.classification, Dominance::kNashAllTimes);
    std::string reason;
    EXPECT_TRUE(ReverifyFinding(f, &reason)) << reason;
    CheckSubNashAlongCycle(f);
  }
}

TEST(SearchTest, ParallelMatchesSerial) {
  SearchConfig config = SmallConfig();
  config.workers = 2;
  const SearchResult parallel = SearchSubNash(config);
  const SearchResult serial = SearchSubNashSerial(config);
  EXPECT_EQ(parallel.trials, serial.trials);
  EXPECT_EQ(parallel.accepted, serial.accepted);
  EXPECT_EQ(parallel.rejected_no_nash, serial.rejected_no_nash);
  ASSERT_EQ(parallel.findings.size(), serial.findings.size());
  for (size_t k = 0; k < serial.findings.size(); ++k) {
    EXPECT_EQ(parallel.findings[k].trial, serial.findings[k].trial);
    EXPECT_EQ(parallel.findings[k].transformed.a(),
              serial.findings[k].transformed.a());
    EXPECT_EQ(parallel.findings[k].transformed.b(),
              serial.findings[k].transformed.b());
  }
}

TEST(SearchTest, ReverifyRejectsTamperedFinding) {
  SearchConfig config;
  config.count = 0;
  config.injected = {Section5Game()};
  SearchFinding f = SearchSubNash(config).findings.at(0);
  // Starting at the Nash point leaves nothing to verify.
  f.start = f.nash.profile;
  std::string reason;
  EXPECT_FALSE(ReverifyFinding(f, &reason));
  EXPECT_FALSE(reason.empty());
}

}  // namespace
}  // namespace fpdyn
