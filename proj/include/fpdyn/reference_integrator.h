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
#ifndef FPDYN_REFERENCE_INTEGRATOR_H_
#define FPDYN_REFERENCE_INTEGRATOR_H_

#include <functional>

#include <Eigen/Dense>

#include "fpdyn/dynamics.h"
#include "fpdyn/game.h"

namespace fpdyn {

// Independent check on the event-driven integrator: FP in log-time
// s = ln t is the autonomous best-response dynamics dp/ds = BR(q) - p,
// integrated here with explicit Euler steps. Ties go to the smallest index.
inline constexpr double kReferenceStep = 1e-5;

using ReferenceVisitor = std::function<void(
    double t, const Eigen::VectorXd& p, const Eigen::VectorXd& q)>;

// Integrates from t = 1 to t_end, calling visit after the start and after
// every step. Returns the final state.
MixedProfile ReferenceIntegrate(const BimatrixGame& game,
                                const MixedProfile& initial, double t_end,
                                double step = kReferenceStep,
                                const ReferenceVisitor& visit = nullptr);

// Sup-norm distance between the trajectory and the reference solution over
// [1, t_end], sampled at every reference step.
double ReferenceSupDistance(const Trajectory& trajectory, double t_end,
                            double step = kReferenceStep);

}  // namespace fpdyn

#endif  // FPDYN_REFERENCE_INTEGRATOR_H_
