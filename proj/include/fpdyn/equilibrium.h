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
#ifndef FPDYN_EQUILIBRIUM_H_
#define FPDYN_EQUILIBRIUM_H_

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fpdyn/game.h"

namespace fpdyn {

// Empirical joint play frequencies p_ij; entries >= 0 summing to one.
class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd p);
  static JointDistribution Product(const Eigen::VectorXd& p,
                                   const Eigen::VectorXd& q);
  // Normalises an occupancy (time-weighted counts) matrix.
  static JointDistribution FromOccupancy(const Eigen::MatrixXd& occupancy);

  const Eigen::MatrixXd& matrix() const { return p_; }
  Eigen::VectorXd RowMarginal() const { return p_.rowwise().sum(); }
  Eigen::VectorXd ColMarginal() const { return p_.colwise().sum(); }

 private:
  Eigen::MatrixXd p_;
};

struct RegretReport {
  // Raw (unclipped) values; external_a[i'] = sum_ij a_i'j p_ij - sum_ij a_ij p_ij.
  Eigen::VectorXd external_a;
  Eigen::VectorXd external_b;
  // internal_a(i, i') = sum_j (a_i'j - a_ij) p_ij; zero diagonal.
  Eigen::MatrixXd internal_a;
  Eigen::MatrixXd internal_b;
  double max_external = 0.0;
  double max_internal = 0.0;
};

struct NashPoint {
  MixedProfile profile;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  bool completely_mixed = false;
};

inline constexpr double kNashResidualTolerance = 1e-9;

// Completely mixed equilibrium from the payoff-equality systems
// (A q)_i = (A q)_{i+1}, sum q = 1 and (p B)_j = (p B)_{j+1}, sum p = 1.
// Absent when a system is singular or a solution is not strictly positive.
// Throws kDimensionMismatch for non-square games.
std::optional<NashPoint> InteriorNash(const BimatrixGame& game);

// Pure profiles (i, j) with i a best response to j and j to i.
std::vector<NashPoint> PureNashEquilibria(const BimatrixGame& game);

RegretReport Regret(const BimatrixGame& game, const JointDistribution& dist);

enum class EquilibriumKind { kCoarseCorrelated, kCorrelated };

inline constexpr double kDefaultMembershipTolerance = 1e-8;

// CCE: max raw external regret <= tol. CE: max raw internal regret <= tol.
bool EquilibriumMembership(const BimatrixGame& game,
                           const JointDistribution& dist, EquilibriumKind kind,
                           double tol = kDefaultMembershipTolerance);

}  // namespace fpdyn

#endif  // FPDYN_EQUILIBRIUM_H_
