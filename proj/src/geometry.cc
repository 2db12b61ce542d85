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
#include "fpdyn/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpdyn/error.h"

namespace fpdyn {
namespace {

// Affine minimiser of |sum_k v_k P_k| subject to sum v = 1 over the corral.
Eigen::VectorXd AffineMinimizer(const std::vector<Eigen::VectorXd>& points,
                                const std::vector<int>& corral) {
  const int k = static_cast<int>(corral.size());
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      system(r, c) = points[corral[r]].dot(points[corral[c]]);
    }
    system(r, k) = 1.0;
    system(k, r) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs[k] = 1.0;
  return system.completeOrthogonalDecomposition().solve(rhs).head(k);
}

}  // namespace

Eigen::VectorXd MinNormPoint(const std::vector<Eigen::VectorXd>& points) {
  Require(!points.empty(), ErrorKind::kInvalidArgument, "no points given");
  const auto dim = points.front().size();
  double scale = 0.0;
  int start = 0;
  for (int k = 0; k < static_cast<int>(points.size()); ++k) {
    Require(points[k].size() == dim, ErrorKind::kDimensionMismatch,
            "points of different dimensions");
    scale = std::max(scale, points[k].squaredNorm());
    if (points[k].squaredNorm() < points[start].squaredNorm()) start = k;
  }
  const double eps = 1e-14 * std::max(scale, 1e-300);

  std::vector<int> corral = {start};
  std::vector<double> weights = {1.0};
  Eigen::VectorXd x = points[start];
  for (int iter = 0; iter < 1000; ++iter) {
    int entering = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(points.size()); ++k) {
      const double value = x.dot(points[k]);
      if (value < best) {
        best = value;
        entering = k;
      }
    }
    if (x.squaredNorm() - best <= eps) break;
    if (std::find(corral.begin(), corral.end(), entering) != corral.end()) {
      break;
    }
    corral.push_back(entering);
    weights.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      const Eigen::VectorXd v = AffineMinimizer(points, corral);
      if (v.minCoeff() > 1e-15) {
        weights.assign(v.data(), v.data() + v.size());
        break;
      }
      double theta = 1.0;
      for (int k = 0; k < v.size(); ++k) {
        if (v[k] <= 1e-15) {
          theta = std::min(theta, weights[k] / (weights[k] - v[k]));
        }
      }
      std::vector<int> kept;
      std::vector<double> kept_weights;
      for (int k = 0; k < v.size(); ++k) {
        const double w = (1.0 - theta) * weights[k] + theta * v[k];
        if (w > 1e-15) {
          kept.push_back(corral[k]);
          kept_weights.push_back(w);
        }
      }
      corral = kept;
      weights = kept_weights;
      if (corral.size() == 1) {
        weights = {1.0};
        break;
      }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    x = Eigen::VectorXd::Zero(dim);
    for (size_t k = 0; k < corral.size(); ++k) {
      x += (weights[k] / total) * points[corral[k]];
    }
  }
  return x;
}

bool StrictlySeparable(const std::vector<Eigen::VectorXd>& points,
                       const Eigen::VectorXd& apex) {
  Require(!points.empty(), ErrorKind::kInvalidArgument, "no points given");
  std::vector<Eigen::VectorXd> directions;
  directions.reserve(points.size());
  for (const auto& point : points) {
    Require(point.size() == apex.size(), ErrorKind::kDimensionMismatch,
            "point and apex dimensions differ");
    const Eigen::VectorXd d = point - apex;
    const double norm = d.norm();
    if (norm <= 1e-12) return false;
    directions.push_back(d / norm);
  }
  return MinNormPoint(directions).norm() > kSeparationMargin;
}

double MinSingularValue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

Eigen::MatrixXd TangentBasis(int n) {
  Require(n >= 2, ErrorKind::kInvalidArgument, "dimension must be >= 2");
  // Columns e_k - e_{k+1}, orthonormalised.
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 0; k + 1 < n; ++k) {
    raw(k, k) = 1.0;
    raw(k + 1, k) = -1.0;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n - 1);
}

double MaxInteriorStep(const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  double step = std::numeric_limits<double>::infinity();
  for (int k = 0; k < x.size(); ++k) {
    if (v[k] < 0.0) step = std::min(step, x[k] / -v[k]);
  }
  return step;
}

}  // namespace fpdyn
