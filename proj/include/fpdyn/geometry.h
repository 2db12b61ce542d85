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
#ifndef FPDYN_GEOMETRY_H_
#define FPDYN_GEOMETRY_H_

#include <vector>

#include <Eigen/Dense>

namespace fpdyn {

// Minimum-norm point of conv(points) (Wolfe's algorithm). Throws
// kInvalidArgument on empty input or mixed dimensions.
Eigen::VectorXd MinNormPoint(const std::vector<Eigen::VectorXd>& points);

// Separation margin below which points count as not strictly separable.
inline constexpr double kSeparationMargin = 1e-9;

// True iff some hyperplane through apex has every point strictly on one
// side: the normalised directions (point - apex) have a convex hull at
// distance > kSeparationMargin from the origin. A point equal to the apex
// is never separable. Throws kInvalidArgument on empty input.
bool StrictlySeparable(const std::vector<Eigen::VectorXd>& points,
                       const Eigen::VectorXd& apex);

double MinSingularValue(const Eigen::MatrixXd& m);

// Orthonormal basis (n x (n - 1)) of the hyperplane {x : sum x = 0}.
Eigen::MatrixXd TangentBasis(int n);

// Largest s >= 0 with x + s v >= 0 componentwise (infinity if v >= 0).
double MaxInteriorStep(const Eigen::VectorXd& x, const Eigen::VectorXd& v);

}  // namespace fpdyn

#endif  // FPDYN_GEOMETRY_H_
