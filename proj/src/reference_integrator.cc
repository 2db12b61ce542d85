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
#include "fpdyn/reference_integrator.h"

#include <algorithm>
#include <cmath>

#include "fpdyn/error.h"

namespace fpdyn {

MixedProfile ReferenceIntegrate(const BimatrixGame& game,
                                const MixedProfile& initial, double t_end,
                                double step, const ReferenceVisitor& visit) {
  Require(t_end >= 1.0, ErrorKind::kInvalidArgument, "t_end must be >= 1");
  Require(step > 0.0, ErrorKind::kInvalidArgument, "step must be > 0");
  CheckDimensions(game, initial);
  Eigen::VectorXd p = initial.p, q = initial.q;
  const double s_end = std::log(t_end);
  if (visit) visit(1.0, p, q);
  double s = 0.0;
  while (s < s_end) {
    const double h = std::min(step, s_end - s);
    int i = 0, j = 0;
    (game.a() * q).maxCoeff(&i);
    (game.b().transpose() * p).maxCoeff(&j);
    p *= 1.0 - h;
    p[i] += h;
    q *= 1.0 - h;
    q[j] += h;
    s += h;
    if (s_end - s < 1e-3 * step) s = s_end;
    if (visit) visit(std::exp(s), p, q);
  }
  return MixedProfile{p, q};
}

double ReferenceSupDistance(const Trajectory& trajectory, double t_end,
                            double step) {
  Require(t_end <= trajectory.t_now(), ErrorKind::kOutOfRange,
          "t_end beyond the simulated range");
  double worst = 0.0;
  ReferenceIntegrate(
      trajectory.game(), trajectory.initial_window(), t_end, step,
      [&](double t, const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
        const MixedProfile exact =
            trajectory.StateAt(std::min(t, trajectory.t_now()));
        worst = std::max({worst, (exact.p - p).cwiseAbs().maxCoeff(),
                          (exact.q - q).cwiseAbs().maxCoeff()});
      });
  return worst;
}

}  // namespace fpdyn
