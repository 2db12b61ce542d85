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
#ifndef FPDYN_GAME_H_
#define FPDYN_GAME_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fpdyn {

enum class Player { kA, kB };

// Components may dip below zero by this much before a vector is rejected.
inline constexpr double kSimplexTolerance = 1e-12;
// Vectors within this distance of the simplex are renormalised on entry.
inline constexpr double kRenormalizeTolerance = 1e-9;
// Default argmax tie tolerance, relative to the payoff spread max - min.
inline constexpr double kRelativeTieTolerance = 1e-10;
// Absolute fallback used when the spread is zero.
inline constexpr double kAbsoluteTieTolerance = 1e-12;

// Two-player bimatrix game (A, B), both m x n. Player A picks rows, player B
// picks columns. Immutable after construction.
class BimatrixGame {
 public:
  BimatrixGame(Eigen::MatrixXd a, Eigen::MatrixXd b, std::string name = "");

  int rows() const { return static_cast<int>(a_.rows()); }
  int cols() const { return static_cast<int>(a_.cols()); }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const std::string& name() const { return name_; }
  const Eigen::MatrixXd& payoffs(Player player) const {
    return player == Player::kA ? a_ : b_;
  }

  // Payoff vector of the player against the opponent's mixed strategy:
  // A q for player A, p B for player B.
  Eigen::VectorXd PayoffVector(Player player,
                               const Eigen::VectorXd& opponent) const;

  BimatrixGame Renamed(std::string name) const;

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
  std::string name_;
};

// Validates a probability vector and returns it renormalised. Throws
// kInvalidArgument when it is not within kRenormalizeTolerance of the simplex.
Eigen::VectorXd NormalizeSimplexPoint(const Eigen::VectorXd& x);

struct MixedProfile {
  Eigen::VectorXd p;  // player A, length m
  Eigen::VectorXd q;  // player B, length n

  // Validating constructor; renormalises near-simplex input.
  static MixedProfile Make(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
  static MixedProfile Pure(int m, int n, int i, int j);
};

// Best-response index sets. Zero-based; singletons identify the open interior
// of a preference region, larger sets an indifference set.
struct RegionIndex {
  std::vector<int> a;
  std::vector<int> b;

  bool IsSingleton() const { return a.size() == 1 && b.size() == 1; }
  bool operator==(const RegionIndex&) const = default;
};

// Indices k with v[k] >= max(v) - tol.
std::vector<int> ArgmaxSet(const Eigen::VectorXd& v, double tol);
// Scale-aware tolerance: kRelativeTieTolerance * (max - min), falling back to
// kAbsoluteTieTolerance when the spread vanishes.
double DefaultTieTolerance(const Eigen::VectorXd& v);
std::vector<int> ArgmaxSet(const Eigen::VectorXd& v);

void CheckDimensions(const BimatrixGame& game, const MixedProfile& profile);

// (p A q, p B q).
std::pair<double, double> Payoff(const BimatrixGame& game,
                                 const MixedProfile& profile);

RegionIndex BestResponse(const BimatrixGame& game, const MixedProfile& profile);
RegionIndex BestResponse(const BimatrixGame& game, const MixedProfile& profile,
                         double tol);

// max_i (A q)_i for player A, max_j (p B)_j for player B.
double MaxPayoff(const BimatrixGame& game, Player player,
                 const Eigen::VectorXd& opponent_strategy);

// Product region R^B_j x R^A_i containing the profile. Same index sets as
// BestResponse; kept separate because the integrator uses it as its event
// predicate.
RegionIndex RegionOf(const BimatrixGame& game, const MixedProfile& profile);
RegionIndex RegionOf(const BimatrixGame& game, const MixedProfile& profile,
                     double tol);

struct GenericityReport {
  bool degenerate = false;
  double tie_fraction_a = 0.0;
  double tie_fraction_b = 0.0;
  std::string reason;
};

inline constexpr int kGenericitySamples = 1000;
inline constexpr double kGenericityTieTolerance = 1e-8;
inline constexpr double kGenericityMaxTieFraction = 0.01;

// Samples random opponent strategies and flags the game when more than 1% of
// them produce a best-response tie. Deterministic for a given seed.
GenericityReport CheckGenericity(const BimatrixGame& game,
                                 uint64_t seed = 0x5EEDULL);

}  // namespace fpdyn

#endif  // FPDYN_GAME_H_
