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
#ifndef FPDYN_BATCH_H_
#define FPDYN_BATCH_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fpdyn/dynamics.h"
#include "fpdyn/game.h"

namespace fpdyn {

// Summary of one run in a batch over many initial conditions.
struct BatchResult {
  MixedProfile initial;
  MixedProfile final_state;
  std::pair<double, double> average_payoffs;
  int64_t segments = 0;
  Termination termination = Termination::kHorizon;
  std::string error;  // non-empty when the run threw
};

// Number of OpenMP threads for a requested worker count (0 = all).
int ResolveWorkers(int requested);

// Independent runs in parallel; results are in input order. Throws
// kDegenerate up front for degenerate games.
std::vector<BatchResult> SimulateBatch(const BimatrixGame& game,
                                       const std::vector<MixedProfile>& starts,
                                       double horizon,
                                       const SimulationOptions& options = {},
                                       int workers = 0);

// Serial reference for SimulateBatch.
std::vector<BatchResult> SimulateBatchSerial(
    const BimatrixGame& game, const std::vector<MixedProfile>& starts,
    double horizon, const SimulationOptions& options = {});

// per_side^2 interior starts; generic (irrational offsets) for dimension > 2.
std::vector<MixedProfile> GridStarts(int m, int n, int per_side);

// Uniform random interior starts drawn from Rng(SplitSeed(seed, k)).
std::vector<MixedProfile> RandomStarts(int m, int n, int count, uint64_t seed);

}  // namespace fpdyn

#endif  // FPDYN_BATCH_H_
