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
#ifndef FPDYN_EXPERIMENTS_H_
#define FPDYN_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fpdyn/dynamics.h"
#include "fpdyn/equilibrium.h"
#include "fpdyn/game.h"
#include "fpdyn/orbit_analysis.h"

namespace fpdyn {

// Named reproduction targets. Each one is a pass/fail check with its
// tolerances fixed in experiments.cc.
struct CriterionResult {
  int id = 0;
  std::string key;
  std::string title;
  bool passed = false;
  std::string detail;
};

// Keys in criterion order: beta-nash, section5-nash, section5, beta-payoff,
// belief-gap, cce, dominant, rays, integrator, prisoners.
std::vector<std::string> ReproduceKeys();

// Accepts a key or its 1-based number. Throws kInvalidArgument otherwise.
CriterionResult RunCriterion(const std::string& key);
std::vector<CriterionResult> RunAllCriteria();

// Random d x d games with entries uniform on [-1, 1], a unique interior Nash
// equilibrium and no degeneracy; draw k uses Rng(SplitSeed(seed, k)).
std::vector<BimatrixGame> RandomGamesWithInteriorNash(int count, int dimension,
                                                      uint64_t seed);

// The 8-periodic example run behind the section5 target.
struct Section5Run {
  Trajectory trajectory;
  Itinerary itinerary;
  NashPoint nash;
  DominanceReport dominance;  // over the last kSection5Periods periods
  std::vector<std::pair<double, double>> period_averages;
};

inline constexpr double kSection5Horizon = 1e6;
inline constexpr int kSection5Periods = 10;

MixedProfile Section5Start();
Section5Run RunSection5(double horizon = kSection5Horizon);

// The printed 8-cycle as zero-based (A play, B play) pairs.
std::vector<std::pair<int, int>> Section5Itinerary();

}  // namespace fpdyn

#endif  // FPDYN_EXPERIMENTS_H_
