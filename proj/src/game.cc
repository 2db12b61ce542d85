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
#include "fpdyn/game.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpdyn/error.h"
#include "fpdyn/random.h"

namespace fpdyn {

BimatrixGame::BimatrixGame(Eigen::MatrixXd a, Eigen::MatrixXd b,
                           std::string name)
    : a_(std::move(a)), b_(std::move(b)), name_(std::move(name)) {
  Require(a_.rows() == b_.rows() && a_.cols() == b_.cols(),
          ErrorKind::kDimensionMismatch,
          "payoff matrices A and B must have identical dimensions");
  Require(a_.rows() >= 2 && a_.cols() >= 2, ErrorKind::kInvalidArgument,
          "a bimatrix game needs at least 2 strategies per player");
  Require(a_.allFinite() && b_.allFinite(), ErrorKind::kInvalidArgument,
          "payoff entries must be finite");
}

Eigen::VectorXd BimatrixGame::PayoffVector(
    Player player, const Eigen::VectorXd& opponent) const {
  if (player == Player::kA) {
    Require(opponent.size() == cols(), ErrorKind::kDimensionMismatch,
            "strategy of player B must have length n");
    return a_ * opponent;
  }
  Require(opponent.size() == rows(), ErrorKind::kDimensionMismatch,
          "strategy of player A must have length m");
  return b_.transpose() * opponent;
}

BimatrixGame BimatrixGame::Renamed(std::string name) const {
  return BimatrixGame(a_, b_, std::move(name));
}

Eigen::VectorXd NormalizeSimplexPoint(const Eigen::VectorXd& x) {
  Require(x.size() > 0 && x.allFinite(), ErrorKind::kInvalidArgument,
          "probability vector must be non-empty and finite");
  const double sum = x.sum();
  if (x.minCoeff() < -kRenormalizeTolerance ||
      std::abs(sum - 1.0) > kRenormalizeTolerance) {
    std::ostringstream msg;
    msg << "not a probability vector (min " << x.minCoeff() << ", sum " << sum
        << ")";
    throw Error(ErrorKind::kInvalidArgument, msg.str());
  }
  Eigen::VectorXd y = x.cwiseMax(0.0);
  return y / y.sum();
}

MixedProfile MixedProfile::Make(const Eigen::VectorXd& p,
                                const Eigen::VectorXd& q) {
  return MixedProfile{NormalizeSimplexPoint(p), NormalizeSimplexPoint(q)};
}

MixedProfile MixedProfile::Pure(int m, int n, int i, int j) {
  Require(i >= 0 && i < m && j >= 0 && j < n, ErrorKind::kOutOfRange,
          "pure strategy index out of range");
  return MixedProfile{Eigen::VectorXd::Unit(m, i), Eigen::VectorXd::Unit(n, j)};
}

std::vector<int> ArgmaxSet(const Eigen::VectorXd& v, double tol) {
  Require(tol >= 0.0, ErrorKind::kInvalidArgument, "tolerance must be >= 0");
  const double best = v.maxCoeff();
  std::vector<int> out;
  for (int k = 0; k < v.size(); ++k) {
    if (v[k] >= best - tol) out.push_back(k);
  }
  return out;
}

double DefaultTieTolerance(const Eigen::VectorXd& v) {
  const double spread = v.maxCoeff() - v.minCoeff();
  return spread > 0.0 ? kRelativeTieTolerance * spread : kAbsoluteTieTolerance;
}

std::vector<int> ArgmaxSet(const Eigen::VectorXd& v) {
  return ArgmaxSet(v, DefaultTieTolerance(v));
}

void CheckDimensions(const BimatrixGame& game, const MixedProfile& profile) {
  Require(profile.p.size() == game.rows() && profile.q.size() == game.cols(),
          ErrorKind::kDimensionMismatch,
          "profile dimensions do not match the game");
}

std::pair<double, double> Payoff(const BimatrixGame& game,
                                 const MixedProfile& profile) {
  CheckDimensions(game, profile);
  return {profile.p.dot(game.a() * profile.q),
          profile.p.dot(game.b() * profile.q)};
}

RegionIndex BestResponse(const BimatrixGame& game,
                         const MixedProfile& profile) {
  CheckDimensions(game, profile);
  return {ArgmaxSet(game.PayoffVector(Player::kA, profile.q)),
          ArgmaxSet(game.PayoffVector(Player::kB, profile.p))};
}

RegionIndex BestResponse(const BimatrixGame& game, const MixedProfile& profile,
                         double tol) {
  CheckDimensions(game, profile);
  return {ArgmaxSet(game.PayoffVector(Player::kA, profile.q), tol),
          ArgmaxSet(game.PayoffVector(Player::kB, profile.p), tol)};
}

double MaxPayoff(const BimatrixGame& game, Player player,
                 const Eigen::VectorXd& opponent_strategy) {
  return game.PayoffVector(player, opponent_strategy).maxCoeff();
}

RegionIndex RegionOf(const BimatrixGame& game, const MixedProfile& profile) {
  return BestResponse(game, profile);
}

RegionIndex RegionOf(const BimatrixGame& game, const MixedProfile& profile,
                     double tol) {
  return BestResponse(game, profile, tol);
}

namespace {

// Fraction of sampled opponent strategies at which the top two payoffs of
// the given player are within tol * scale.
double TieFraction(const BimatrixGame& game, Player player, Rng& rng) {
  const Eigen::MatrixXd& m = game.payoffs(player);
  const double scale = m.cwiseAbs().maxCoeff();
  const int opponent_dim = player == Player::kA ? game.cols() : game.rows();
  int ties = 0;
  for (int s = 0; s < kGenericitySamples; ++s) {
    Eigen::VectorXd v =
        game.PayoffVector(player, SampleSimplex(rng, opponent_dim));
    std::sort(v.data(), v.data() + v.size(), std::greater<double>());
    if (v[0] - v[1] <= kGenericityTieTolerance * scale) ++ties;
  }
  return static_cast<double>(ties) / kGenericitySamples;
}

}  // namespace

GenericityReport CheckGenericity(const BimatrixGame& game, uint64_t seed) {
  Rng rng(SplitSeed(seed, 0));
  GenericityReport report;
  report.tie_fraction_a = TieFraction(game, Player::kA, rng);
  report.tie_fraction_b = TieFraction(game, Player::kB, rng);
  std::ostringstream reason;
  if (report.tie_fraction_a > kGenericityMaxTieFraction) {
    reason << "player A best response is multivalued on "
           << 100.0 * report.tie_fraction_a << "% of sampled strategies. ";
  }
  if (report.tie_fraction_b > kGenericityMaxTieFraction) {
    reason << "player B best response is multivalued on "
           << 100.0 * report.tie_fraction_b << "% of sampled strategies.";
  }
  report.reason = reason.str();
  report.degenerate = !report.reason.empty();
  return report;
}

}  // namespace fpdyn
