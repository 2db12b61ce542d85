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
#ifndef FPDYN_BUILTIN_GAMES_H_
#define FPDYN_BUILTIN_GAMES_H_

#include <string>
#include <vector>

#include "fpdyn/game.h"

namespace fpdyn {

// Shapley's 3x3 rock-paper-scissors variant.
BimatrixGame ShapleyGame();
// One-parameter family generalising Shapley's game; beta in (0, 1) for the
// Pareto-dominance results, beta = 0 is Shapley's game.
BimatrixGame BetaFamilyGame(double beta);
// 3x3 game with an attracting 8-periodic FP orbit that is Pareto dominated by
// the completely mixed Nash equilibrium. Entries verbatim to 6 decimals.
BimatrixGame Section5Game();
BimatrixGame PrisonersDilemma();
// Linearly equivalent to PrisonersDilemma(): column shift (-3, 0) on A, row
// shift (-3, 0) on B.
BimatrixGame PrisonersDilemmaEquivalent();
BimatrixGame MatchingPennies();

// Keys: "shapley", "beta:<value>", "section5", "prisoners",
// "prisoners-equivalent", "matching-pennies". When FPDYN_BUILTIN_DIR is set
// and contains <key>.json, that file overrides the compiled-in definition.
BimatrixGame BuiltinGame(const std::string& key);

// The keys used when iterating "every built-in game". Beta is represented by
// the three values used throughout the tests.
std::vector<std::string> BuiltinKeys();

}  // namespace fpdyn

#endif  // FPDYN_BUILTIN_GAMES_H_
