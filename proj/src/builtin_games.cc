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
#include "fpdyn/builtin_games.h"

#include <cstdlib>
#include <filesystem>

#include "fpdyn/error.h"
#include "fpdyn/serialization.h"

namespace fpdyn {

BimatrixGame ShapleyGame() {
  Eigen::MatrixXd a(3, 3), b(3, 3);
  a << 1, 0, 0,
       0, 1, 0,
       0, 0, 1;
  b << 0, 1, 0,
       0, 0, 1,
       1, 0, 0;
  return BimatrixGame(a, b, "shapley");
}

BimatrixGame BetaFamilyGame(double beta) {
  Eigen::MatrixXd a(3, 3), b(3, 3);
  a << 1, 0, beta,
       beta, 1, 0,
       0, beta, 1;
  b << -beta, 1, 0,
       0, -beta, 1,
       1, 0, -beta;
  return BimatrixGame(a, b, "beta:" + FormatDouble(beta));
}

BimatrixGame Section5Game() {
  Eigen::MatrixXd a(3, 3), b(3, 3);
  a << -1.353259, -1.268538, 2.572738,
        0.162237, -1.800824, 1.584291,
       -0.499026, -1.544578, 1.992332;
  b << -1.839111, -2.876997, -3.366031,
       -4.801713, -3.854987, -3.758662,
        6.740060,  6.590451,  6.898102;
  return BimatrixGame(a, b, "section5");
}

BimatrixGame PrisonersDilemma() {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 3, 0,
       5, 1;
  b << 3, 5,
       0, 1;
  return BimatrixGame(a, b, "prisoners");
}

BimatrixGame PrisonersDilemmaEquivalent() {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 0, 0,
       2, 1;
  b << 0, 2,
       0, 1;
  return BimatrixGame(a, b, "prisoners-equivalent");
}

BimatrixGame MatchingPennies() {
  Eigen::MatrixXd a(2, 2);
  a << 1, -1,
      -1, 1;
  return BimatrixGame(a, -a, "matching-pennies");
}

namespace {

BimatrixGame CompiledBuiltin(const std::string& key) {
  if (key == "shapley") return ShapleyGame();
  if (key == "section5") return Section5Game();
  if (key == "prisoners") return PrisonersDilemma();
  if (key == "prisoners-equivalent") return PrisonersDilemmaEquivalent();
  if (key == "matching-pennies") return MatchingPennies();
  if (key.rfind("beta:", 0) == 0) {
    const std::string value = key.substr(5);
    char* end = nullptr;
    const double beta = std::strtod(value.c_str(), &end);
    Require(!value.empty() && end == value.c_str() + value.size(),
            ErrorKind::kInvalidArgument, "cannot parse beta in '" + key + "'");
    return BetaFamilyGame(beta);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown built-in game '" + key + "'");
}

}  // namespace

BimatrixGame BuiltinGame(const std::string& key) {
  if (const char* dir = std::getenv("FPDYN_BUILTIN_DIR"); dir && *dir) {
    const std::filesystem::path path =
        std::filesystem::path(dir) / (key + ".json");
    if (std::filesystem::exists(path)) return LoadGameFile(path.string());
  }
  return CompiledBuiltin(key);
}

std::vector<std::string> BuiltinKeys() {
  return {"shapley",   "beta:0.2",  "beta:0.5",
          "beta:0.8",  "section5",  "prisoners",
          "prisoners-equivalent", "matching-pennies"};
}

}  // namespace fpdyn
