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
#include "fpdyn/equilibrium.h"

#include <cmath>

#include "fpdyn/error.h"

namespace fpdyn {

JointDistribution::JointDistribution(Eigen::MatrixXd p) : p_(std::move(p)) {
  Require(p_.size() > 0 && p_.allFinite(), ErrorKind::kInvalidArgument,
          "joint distribution must be non-empty and finite");
  Require(p_.minCoeff() >= 0.0, ErrorKind::kInvalidArgument,
          "joint distribution entries must be non-negative");
  Require(std::abs(p_.sum() - 1.0) <= 1e-10, ErrorKind::kInvalidArgument,
          "joint distribution must sum to one");
}

JointDistribution JointDistribution::Product(const Eigen::VectorXd& p,
                                             const Eigen::VectorXd& q) {
  return JointDistribution(p * q.transpose());
}

JointDistribution JointDistribution::FromOccupancy(
    const Eigen::MatrixXd& occupancy) {
  const double total = occupancy.sum();
  Require(total > 0.0, ErrorKind::kInvalidArgument, "empty occupancy");
  return JointDistribution(occupancy / total);
}

namespace {

// Solves rows (M_k - M_{k+1}) x = 0, sum x = 1 for the mixed strategy x that
// equalises the entries of M x. Empty when singular.
std::optional<Eigen::VectorXd> EqualizingStrategy(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::MatrixXd system(n, n);
  for (int k = 0; k + 1 < n; ++k) system.row(k) = m.row(k) - m.row(k + 1);
  system.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[n - 1] = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) return std::nullopt;
  return x;
}

}  // namespace

std::optional<NashPoint> InteriorNash(const BimatrixGame& game) {
  Require(game.rows() == game.cols(), ErrorKind::kDimensionMismatch,
          "a completely mixed Nash equilibrium requires a square game");
  auto q = EqualizingStrategy(game.a());
  auto p = EqualizingStrategy(game.b().transpose());
  if (!q || !p) return std::nullopt;
  if (q->minCoeff() <= 0.0 || p->minCoeff() <= 0.0) return std::nullopt;

  const Eigen::VectorXd aq = game.a() * *q;
  const Eigen::VectorXd pb = game.b().transpose() * *p;
  const double scale_a = std::max(1.0, game.a().cwiseAbs().maxCoeff());
  const double scale_b = std::max(1.0, game.b().cwiseAbs().maxCoeff());
  if (aq.maxCoeff() - aq.minCoeff() > kNashResidualTolerance * scale_a ||
      pb.maxCoeff() - pb.minCoeff() > kNashResidualTolerance * scale_b) {
    return std::nullopt;
  }
  NashPoint nash;
  nash.profile = MixedProfile{*p, *q};
  nash.payoff_a = p->dot(aq);
  nash.payoff_b = pb.dot(*q);
  nash.completely_mixed = true;
  return nash;
}

std::vector<NashPoint> PureNashEquilibria(const BimatrixGame& game) {
  std::vector<NashPoint> out;
  const int m = game.rows(), n = game.cols();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool a_best = game.a()(i, j) >= game.a().col(j).maxCoeff();
      const bool b_best = game.b()(i, j) >= game.b().row(i).maxCoeff();
      if (!a_best || !b_best) continue;
      NashPoint nash;
      nash.profile = MixedProfile::Pure(m, n, i, j);
      nash.payoff_a = game.a()(i, j);
      nash.payoff_b = game.b()(i, j);
      nash.completely_mixed = false;
      out.push_back(nash);
    }
  }
  return out;
}

RegretReport Regret(const BimatrixGame& game, const JointDistribution& dist) {
  const Eigen::MatrixXd& a = game.a();
  const Eigen::MatrixXd& b = game.b();
  const Eigen::MatrixXd& p = dist.matrix();
  Require(p.rows() == game.rows() && p.cols() == game.cols(),
          ErrorKind::kDimensionMismatch,
          "joint distribution dimensions do not match the game");
  const int m = game.rows(), n = game.cols();
  const double realized_a = a.cwiseProduct(p).sum();
  const double realized_b = b.cwiseProduct(p).sum();

  RegretReport report;
  report.external_a = a * dist.ColMarginal() - Eigen::VectorXd::Constant(m, realized_a);
  report.external_b =
      b.transpose() * dist.RowMarginal() - Eigen::VectorXd::Constant(n, realized_b);

  report.internal_a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      if (k != i) report.internal_a(i, k) = (a.row(k) - a.row(i)).dot(p.row(i));
    }
  }
  report.internal_b = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      if (l != j) report.internal_b(j, l) = (b.col(l) - b.col(j)).dot(p.col(j));
    }
  }
  report.max_external =
      std::max(report.external_a.maxCoeff(), report.external_b.maxCoeff());
  report.max_internal =
      std::max(report.internal_a.maxCoeff(), report.internal_b.maxCoeff());
  return report;
}

bool EquilibriumMembership(const BimatrixGame& game,
                           const JointDistribution& dist, EquilibriumKind kind,
                           double tol) {
  Require(tol >= 0.0, ErrorKind::kInvalidArgument, "tolerance must be >= 0");
  const RegretReport report = Regret(game, dist);
  if (kind == EquilibriumKind::kCoarseCorrelated) {
    return report.max_external <= tol;
  }
  // external_a[i'] = sum_i internal_a(i, i'), so internal regrets <= tol only
  // bound external regrets by m * tol. Requiring both keeps CE => CCE at
  // equal tol.
  return report.max_internal <= tol && report.max_external <= tol;
}

}  // namespace fpdyn
