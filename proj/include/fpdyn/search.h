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
#ifndef FPDYN_SEARCH_H_
#define FPDYN_SEARCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpdyn/dynamics.h"
#include "fpdyn/equilibrium.h"
#include "fpdyn/equivalence.h"
#include "fpdyn/game.h"
#include "fpdyn/orbit_analysis.h"

namespace fpdyn {

// Random search for games whose FP limit cycle is payoff-dominated by the
// interior Nash equilibrium at all times (after a suitable linear
// equivalence). Games have i.i.d. uniform entries; games without a unique
// interior Nash equilibrium or degenerate ones are discarded and do not
// count. Trial k draws everything from Rng(SplitSeed(seed, k)).
struct SearchConfig {
  int count = 10;  // accepted random games to analyse
  int dimension = 3;
  uint64_t seed = 1;
  double horizon = 1e6;
  double entry_low = -1.0;
  double entry_high = 1.0;
  int starts_per_game = 3;
  int workers = 0;  // 0 = all available threads
  double cycle_tol = kCycleTolerance;
  int verify_periods = 10;
  int64_t max_trials = 0;  // 0 = 1000 * count + 1000
  // Extra games analysed before the random ones (trial indices -1, -2, ...).
  std::vector<BimatrixGame> injected;
};

struct SearchFinding {
  SearchFinding(BimatrixGame original, BimatrixGame equivalent)
      : game(std::move(original)), transformed(std::move(equivalent)) {}

  int64_t trial = 0;
  BimatrixGame game;         // as generated or injected
  BimatrixGame transformed;  // Nash-dominant representative
  LinearTransform transform;
  NashPoint nash;              // of the transformed game
  MixedProfile start;
  Itinerary itinerary;         // of the transformed game's orbit
  DominanceReport dominance;   // of the transformed game's orbit
  std::vector<MixedProfile> cycle_states;
  ConeSpec cone_a;  // in A's simplex
  ConeSpec cone_b;  // in B's simplex
  // Settings needed to replay the verification.
  double horizon = 0.0;
  double cycle_tol = kCycleTolerance;
  int verify_periods = 10;
};

struct SearchResult {
  std::vector<SearchFinding> findings;  // sorted by trial index
  int64_t trials = 0;
  int64_t accepted = 0;
  int64_t rejected_no_nash = 0;
  int64_t rejected_degenerate = 0;
  std::vector<std::string> log;
};

// Cone in the simplex around apex containing every point strictly inside,
// with extreme rays widened past the outermost points. side as in
// ValidateCone. Only 3 x 3 games are supported; returns nullopt otherwise
// or when no valid cone is found.
std::optional<ConeSpec> BuildCone(const BimatrixGame& game, const RaySet& rays,
                                  const std::vector<Eigen::VectorXd>& points,
                                  Player side);

// Full pipeline for one game; nullopt when it yields no verified finding.
// note receives a short description of the outcome.
std::optional<SearchFinding> AnalyzeGame(const BimatrixGame& game,
                                         int64_t trial,
                                         const SearchConfig& config,
                                         std::string* note);

// Trials run concurrently on config.workers threads.
SearchResult SearchSubNash(const SearchConfig& config);
// Serial reference; same results as SearchSubNash.
SearchResult SearchSubNashSerial(const SearchConfig& config);

// Independent re-check of a finding: containment of both cycle projections
// in the cones and Nash dominance of the transformed orbit.
bool ReverifyFinding(const SearchFinding& finding, std::string* reason);

}  // namespace fpdyn

#endif  // FPDYN_SEARCH_H_
