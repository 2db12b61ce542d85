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
#include "fpdyn/equivalence.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "fpdyn/error.h"
#include "fpdyn/geometry.h"
#include "fpdyn/random.h"

namespace fpdyn {
namespace {

double MaxAbs(const Eigen::MatrixXd& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

// Rays for the payoff matrix x (A, or B transposed) around apex (the
// opponent's Nash strategy). With pi dropping the last coordinate, the
// successive payoff differences (x s)_l - (x s)_{l+1} are affine in pi(s)
// with linear part m; the targets w^k make strategy k strictly worst with
// the others tied.
void RaysFor(const Eigen::MatrixXd& x, const Eigen::VectorXd& apex,
             std::vector<Eigen::VectorXd>* directions,
             std::vector<Eigen::VectorXd>* points) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd m(n - 1, n - 1);
  for (int l = 0; l + 1 < n; ++l) {
    for (int k = 0; k + 1 < n; ++k) {
      m(l, k) = x(l, k) - x(l + 1, k) - x(l, n - 1) + x(l + 1, n - 1);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  Require(lu.isInvertible(), ErrorKind::kDegenerate,
          "singular ray system (interior Nash equilibrium not unique)");
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n - 1);
    if (k == 0) {
      w[0] = -1.0;
    } else if (k == n - 1) {
      w[n - 2] = 1.0;
    } else {
      w[k - 1] = 1.0;
      w[k] = -1.0;
    }
    const Eigen::VectorXd y = lu.solve(w);
    Eigen::VectorXd v(n);
    v.head(n - 1) = y;
    v[n - 1] = -y.sum();
    const double step = 0.5 * MaxInteriorStep(apex, v);
    directions->push_back(v);
    points->push_back(apex + step * v);
  }
}

double RayResidualFor(const Eigen::MatrixXd& x,
                      const std::vector<Eigen::VectorXd>& points) {
  double worst = 0.0;
  for (int k = 0; k < static_cast<int>(points.size()); ++k) {
    const Eigen::VectorXd payoffs = x * points[k];
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < payoffs.size(); ++i) {
      if (i == k) continue;
      lo = std::min(lo, payoffs[i]);
      hi = std::max(hi, payoffs[i]);
    }
    if (payoffs[k] >= lo) return INFINITY;
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

double IndependenceFor(const std::vector<Eigen::VectorXd>& directions) {
  const int n = static_cast<int>(directions.size());
  double worst = INFINITY;
  for (int drop = 0; drop < n; ++drop) {
    Eigen::MatrixXd stacked(n - 1, directions.front().size());
    int r = 0;
    for (int k = 0; k < n; ++k) {
      if (k != drop) stacked.row(r++) = directions[k].normalized().transpose();
    }
    worst = std::min(worst, MinSingularValue(stacked));
  }
  return worst;
}

// Shifts s with (x P_r) max + s . P_r = 0 for every row P_r of points.
Eigen::VectorXd LevelShifts(const Eigen::MatrixXd& x,
                            const std::vector<Eigen::VectorXd>& points) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd system(n, points.front().size());
  Eigen::VectorXd rhs(n);
  for (int r = 0; r < n; ++r) {
    system.row(r) = points[r].transpose();
    rhs[r] = -(x * points[r]).maxCoeff();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-12);
  Require(lu.isInvertible(), ErrorKind::kDegenerate,
          "singular shift system");
  return lu.solve(rhs);
}

// Best-response payoff of the player whose matrix (oriented so that it acts
// on the opponent's strategy) is x.
double Level(const Eigen::MatrixXd& x, const Eigen::VectorXd& s) {
  return (x * s).maxCoeff();
}

// Sampled check that max (x' s) > max (x' apex) away from the apex.
void CheckStrictMinimum(const Eigen::MatrixXd& x, const Eigen::VectorXd& apex,
                        uint64_t stream, const char* who) {
  const double scale = MaxAbs(x);
  const Eigen::VectorXd at_apex = x * apex;
  Require(at_apex.maxCoeff() - at_apex.minCoeff() <= kGateTolerance * scale,
          ErrorKind::kGateFailure,
          std::string("payoffs not equalised at the Nash point for ") + who);
  const double level = at_apex.maxCoeff();
  Rng rng(SplitSeed(kGateSeed, stream));
  for (int s = 0; s < kGateSamples; ++s) {
    const Eigen::VectorXd y = SampleSimplex(rng, static_cast<int>(apex.size()));
    const double distance = (y - apex).lpNorm<1>();
    if (distance <= 1e-12) continue;
    // The best-response payoff is convex and piecewise linear with a strict
    // minimum, so it grows at least linearly in the distance to the apex.
    Require(Level(x, y) - level > kGateTolerance * distance * scale,
            ErrorKind::kGateFailure,
            std::string("dominance gate failed for ") + who);
  }
}

Eigen::MatrixXd Oriented(const BimatrixGame& game, Player side) {
  return side == Player::kA ? game.a()
                            : Eigen::MatrixXd(game.b().transpose());
}

// Sampled check that the 0-sublevel set of max (x s) is exactly the cone.
void CheckConeLevelSet(const Eigen::MatrixXd& x, const ConeSpec& cone,
                       uint64_t stream, const char* who) {
  const double scale = MaxAbs(x);
  const double tol = kGateTolerance * scale;
  Require(std::abs(Level(x, cone.apex)) <= tol, ErrorKind::kGateFailure,
          std::string("level at the apex is not 0 for ") + who);
  for (const auto& point : cone.extreme_points) {
    Require(std::abs(Level(x, point)) <= tol, ErrorKind::kGateFailure,
            std::string("level at an extreme point is not 0 for ") + who);
  }
  const int n = static_cast<int>(cone.apex.size());
  Rng rng(SplitSeed(kGateSeed, stream));
  std::exponential_distribution<double> exp(1.0);
  for (int s = 0; s < kGateSamples; ++s) {
    // Inside: a random positive combination of the extreme directions.
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (const auto& point : cone.extreme_points) {
      w += exp(rng) * (point - cone.apex);
    }
    const double step = MaxInteriorStep(cone.apex, w);
    const Eigen::VectorXd inside =
        cone.apex + std::min(step, 1e6) * Uniform(rng, 0.0, 0.99) * w;
    Require(Level(x, inside) <= tol, ErrorKind::kGateFailure,
            std::string("positive level inside the cone for ") + who);
    // Outside: uniform simplex points with a clearly negative coordinate.
    const Eigen::VectorXd y = SampleSimplex(rng, n);
    const Eigen::VectorXd lambda = ConeCoordinates(cone, y);
    if (lambda.minCoeff() < -1e-6 * std::max(lambda.lpNorm<1>(), 1e-300)) {
      Require(Level(x, y) > 0.0, ErrorKind::kGateFailure,
              std::string("non-positive level outside the cone for ") + who);
    }
  }
}

}  // namespace

LinearTransform LinearTransform::Identity(int m, int n) {
  return LinearTransform{1.0, Eigen::VectorXd::Zero(n), 1.0,
                         Eigen::VectorXd::Zero(m)};
}

BimatrixGame ApplyTransform(const BimatrixGame& game,
                            const LinearTransform& transform) {
  Require(transform.c > 0.0 && transform.d > 0.0, ErrorKind::kInvalidArgument,
          "transform scales must be positive");
  Require(transform.col_shifts.size() == game.cols() &&
              transform.row_shifts.size() == game.rows(),
          ErrorKind::kDimensionMismatch,
          "transform shifts do not match the game dimensions");
  Eigen::MatrixXd a = transform.c * game.a();
  a.rowwise() += transform.col_shifts.transpose();
  Eigen::MatrixXd b = transform.d * game.b();
  b.colwise() += transform.row_shifts;
  return BimatrixGame(std::move(a), std::move(b), game.name());
}

LinearTransform Compose(const LinearTransform& first,
                        const LinearTransform& second) {
  Require(first.col_shifts.size() == second.col_shifts.size() &&
              first.row_shifts.size() == second.row_shifts.size(),
          ErrorKind::kDimensionMismatch, "transform dimensions differ");
  return LinearTransform{first.c * second.c,
                         second.c * first.col_shifts + second.col_shifts,
                         first.d * second.d,
                         second.d * first.row_shifts + second.row_shifts};
}

bool SameBestResponses(const BimatrixGame& g1, const BimatrixGame& g2,
                       uint64_t seed) {
  Require(g1.rows() == g2.rows() && g1.cols() == g2.cols(),
          ErrorKind::kDimensionMismatch, "games differ in dimensions");
  Rng rng(seed);
  for (int s = 0; s < kGateSamples; ++s) {
    const MixedProfile profile{SampleSimplex(rng, g1.rows()),
                               SampleSimplex(rng, g1.cols())};
    if (!(BestResponse(g1, profile) == BestResponse(g2, profile))) return false;
  }
  return true;
}

RaySet ComputeRays(const BimatrixGame& game) {
  const auto nash = InteriorNash(game);
  Require(nash.has_value(), ErrorKind::kDegenerate,
          "game has no unique completely mixed Nash equilibrium");
  RaySet rays;
  rays.nash = *nash;
  RaysFor(game.a(), nash->profile.q, &rays.directions_a, &rays.points_a);
  RaysFor(game.b().transpose(), nash->profile.p, &rays.directions_b,
          &rays.points_b);
  return rays;
}

double RayResidual(const BimatrixGame& game, const RaySet& rays) {
  return std::max(RayResidualFor(game.a(), rays.points_a),
                  RayResidualFor(game.b().transpose(), rays.points_b));
}

double RayIndependence(const RaySet& rays) {
  return std::min(IndependenceFor(rays.directions_a),
                  IndependenceFor(rays.directions_b));
}

DominantResult DominantEquivalent(const BimatrixGame& game) {
  const RaySet rays = ComputeRays(game);
  LinearTransform transform = LinearTransform::Identity(game.rows(), game.cols());
  transform.col_shifts = LevelShifts(game.a(), rays.points_a);
  transform.row_shifts = LevelShifts(game.b().transpose(), rays.points_b);
  BimatrixGame shifted = ApplyTransform(game, transform);

  CheckStrictMinimum(shifted.a(), rays.nash.profile.q, 1, "player A");
  CheckStrictMinimum(shifted.b().transpose(), rays.nash.profile.p, 2,
                     "player B");
  Require(SameBestResponses(game, shifted), ErrorKind::kGateFailure,
          "best responses changed under the dominant transform");
  return DominantResult{std::move(shifted), std::move(transform)};
}

Eigen::VectorXd ConeCoordinates(const ConeSpec& cone,
                                const Eigen::VectorXd& x) {
  Require(!cone.extreme_points.empty(), ErrorKind::kInvalidArgument,
          "cone has no extreme points");
  Eigen::MatrixXd basis(cone.apex.size(), cone.extreme_points.size());
  for (int r = 0; r < static_cast<int>(cone.extreme_points.size()); ++r) {
    basis.col(r) = cone.extreme_points[r] - cone.apex;
  }
  return basis.colPivHouseholderQr().solve(x - cone.apex);
}

std::string ValidateCone(const BimatrixGame& game, const RaySet& rays,
                         const ConeSpec& cone, Player side) {
  const int n = game.rows();
  const Eigen::VectorXd& apex =
      side == Player::kA ? rays.nash.profile.q : rays.nash.profile.p;
  const auto& ray_directions =
      side == Player::kA ? rays.directions_a : rays.directions_b;
  const Eigen::MatrixXd x = Oriented(game, side);

  if (cone.apex.size() != n) return "apex has the wrong dimension";
  if (static_cast<int>(cone.extreme_points.size()) != n - 1) {
    return "cone needs exactly n - 1 extreme points";
  }
  for (const auto& point : cone.extreme_points) {
    if (point.size() != n) return "extreme point has the wrong dimension";
    if (point.minCoeff() < -kSimplexTolerance ||
        std::abs(point.sum() - 1.0) > kRenormalizeTolerance) {
      return "extreme point is not on the simplex";
    }
  }
  if ((cone.apex - apex).cwiseAbs().maxCoeff() > 1e-9) {
    return "apex is not the Nash projection";
  }
  Eigen::MatrixXd stacked(n - 1, n);
  for (int r = 0; r < n - 1; ++r) {
    const Eigen::VectorXd d = cone.extreme_points[r] - cone.apex;
    if (d.norm() <= 1e-12) return "extreme point coincides with the apex";
    stacked.row(r) = d.normalized().transpose();
  }
  if (MinSingularValue(stacked) <= kIndependenceTolerance) {
    return "extreme directions are linearly dependent";
  }
  if (!StrictlySeparable(cone.extreme_points, cone.apex)) {
    return "cone does not fit in an open halfspace";
  }
  if (cone.contains_ray_index < 0 || cone.contains_ray_index >= n) {
    return "contained ray index out of range";
  }
  const Eigen::VectorXd lambda = ConeCoordinates(
      cone, cone.apex + ray_directions[cone.contains_ray_index]);
  if (lambda.minCoeff() <= 1e-12 * lambda.lpNorm<1>()) {
    return "ray " + std::to_string(cone.contains_ray_index + 1) +
           " is not strictly inside the cone";
  }
  std::set<int> regions;
  for (const auto& point : cone.extreme_points) {
    const std::vector<int> best = ArgmaxSet(x * point);
    if (best.size() != 1) return "extreme point lies on an indifference set";
    if (!regions.insert(best.front()).second) {
      return "two extreme points share a preference region";
    }
  }
  return "";
}

ConeTargetedResult ConeTargetedEquivalent(const BimatrixGame& game,
                                          const ConeSpec& cone_a,
                                          const ConeSpec& cone_b) {
  const RaySet rays = ComputeRays(game);
  const std::string reason_b = ValidateCone(game, rays, cone_b, Player::kA);
  Require(reason_b.empty(), ErrorKind::kInvalidArgument,
          "cone in B's simplex rejected: " + reason_b);
  const std::string reason_a = ValidateCone(game, rays, cone_a, Player::kB);
  Require(reason_a.empty(), ErrorKind::kInvalidArgument,
          "cone in A's simplex rejected: " + reason_a);

  auto with_apex = [](const ConeSpec& cone) {
    std::vector<Eigen::VectorXd> points = {cone.apex};
    points.insert(points.end(), cone.extreme_points.begin(),
                  cone.extreme_points.end());
    return points;
  };
  LinearTransform transform = LinearTransform::Identity(game.rows(), game.cols());
  transform.col_shifts = LevelShifts(game.a(), with_apex(cone_b));
  transform.row_shifts =
      LevelShifts(game.b().transpose(), with_apex(cone_a));
  BimatrixGame shifted = ApplyTransform(game, transform);

  CheckConeLevelSet(shifted.a(), cone_b, 3, "player A");
  CheckConeLevelSet(shifted.b().transpose(), cone_a, 4, "player B");
  Require(SameBestResponses(game, shifted), ErrorKind::kGateFailure,
          "best responses changed under the cone transform");
  return ConeTargetedResult{std::move(shifted), std::move(transform)};
}

std::pair<bool, bool> SubNashMembership(const BimatrixGame& game,
                                        const NashPoint& nash,
                                        const MixedProfile& profile) {
  CheckDimensions(game, profile);
  CheckDimensions(game, nash.profile);
  const bool p_in = MaxPayoff(game, Player::kB, profile.p) <=
                    MaxPayoff(game, Player::kB, nash.profile.p) +
                        kSubNashTolerance;
  const bool q_in = MaxPayoff(game, Player::kA, profile.q) <=
                    MaxPayoff(game, Player::kA, nash.profile.q) +
                        kSubNashTolerance;
  return {p_in, q_in};
}

}  // namespace fpdyn
