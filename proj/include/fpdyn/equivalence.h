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
#ifndef FPDYN_EQUIVALENCE_H_
#define FPDYN_EQUIVALENCE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fpdyn/equilibrium.h"
#include "fpdyn/game.h"

namespace fpdyn {

// a'_ij = c a_ij + c_j, b'_ij = d b_ij + d_i. Best responses, and hence FP
// orbits, are unchanged.
struct LinearTransform {
  double c = 1.0;
  Eigen::VectorXd col_shifts;  // length n
  double d = 1.0;
  Eigen::VectorXd row_shifts;  // length m

  static LinearTransform Identity(int m, int n);
};

BimatrixGame ApplyTransform(const BimatrixGame& game,
                            const LinearTransform& transform);

// Transform equal to applying first, then second.
LinearTransform Compose(const LinearTransform& first,
                        const LinearTransform& second);

// Sampling gates used to verify constructed equivalents.
inline constexpr int kGateSamples = 1000;
inline constexpr uint64_t kGateSeed = 0xC0FFEEULL;
inline constexpr double kGateTolerance = 1e-9;
inline constexpr double kRayTolerance = 1e-9;
inline constexpr double kIndependenceTolerance = 1e-9;

// True when best-response sets coincide at kGateSamples random profiles.
bool SameBestResponses(const BimatrixGame& g1, const BimatrixGame& g2,
                       uint64_t seed = kGateSeed);

// Rays from the Nash projections along which all but one pure strategy of
// the other player tie and the remaining one is strictly worst.
// directions_a / points_a live in player B's simplex (A's payoffs tie),
// directions_b / points_b in player A's simplex.
struct RaySet {
  NashPoint nash;
  std::vector<Eigen::VectorXd> directions_a;
  std::vector<Eigen::VectorXd> points_a;
  std::vector<Eigen::VectorXd> directions_b;
  std::vector<Eigen::VectorXd> points_b;
};

// Throws kDegenerate without a unique interior Nash equilibrium.
RaySet ComputeRays(const BimatrixGame& game);

// Largest violation of the defining relations of the rays: strategy k
// strictly worst (reported as a positive number when violated) and the
// remaining payoffs equal.
double RayResidual(const BimatrixGame& game, const RaySet& rays);
// Smallest singular value over all (n - 1)-subsets of normalised
// directions, minimised over both players.
double RayIndependence(const RaySet& rays);

struct DominantResult {
  BimatrixGame game;
  LinearTransform transform;
};

// Shifted game in which every off-Nash belief yields a higher best-response
// payoff than the Nash belief:
// max_i (A' q)_i > max_i (A' qbar)_i for q != qbar, and likewise for B'.
// The common level max_i (A' Q_k)_i on the rays is fixed at 0, so the Nash
// payoffs of the result are negative. Throws kGateFailure when the
// sampled verification fails.
DominantResult DominantEquivalent(const BimatrixGame& game);

// Cone with apex at a Nash projection spanned by n - 1 extreme points.
// contains_ray_index is a zero-based index k of a ray L_k inside the cone.
struct ConeSpec {
  Eigen::VectorXd apex;
  std::vector<Eigen::VectorXd> extreme_points;
  int contains_ray_index = 0;
};

// Checks the cone against the game. side = kA means the cone lives in B's
// simplex and is meant to become player A's sub-Nash set (and the other way
// round). Returns an empty string when valid, the reason otherwise.
std::string ValidateCone(const BimatrixGame& game, const RaySet& rays,
                         const ConeSpec& cone, Player side);

// Coordinates of x - apex in the basis of extreme directions.
Eigen::VectorXd ConeCoordinates(const ConeSpec& cone, const Eigen::VectorXd& x);

struct ConeTargetedResult {
  BimatrixGame game;
  LinearTransform transform;
};

// Shifts columns of A so that max_i (A' q)_i <= 0 exactly on cone_b (a cone
// in B's simplex) and rows of B so that max_j (p B')_j <= 0 exactly on cone_a.
// Throws kInvalidArgument for invalid cones, kGateFailure when sampled
// verification fails.
ConeTargetedResult ConeTargetedEquivalent(const BimatrixGame& game,
                                          const ConeSpec& cone_a,
                                          const ConeSpec& cone_b);

inline constexpr double kSubNashTolerance = 1e-10;

// (p in P_B^-, q in P_A^-): max_j (p B)_j <= max_j (pbar B)_j and
// max_i (A q)_i <= max_i (A qbar)_i.
std::pair<bool, bool> SubNashMembership(const BimatrixGame& game,
                                        const NashPoint& nash,
                                        const MixedProfile& profile);

}  // namespace fpdyn

#endif  // FPDYN_EQUIVALENCE_H_
