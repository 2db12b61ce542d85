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
#include "fpdyn/batch.h"

#include <cmath>

#include <omp.h>

#include "fpdyn/error.h"
#include "fpdyn/random.h"

namespace fpdyn {
namespace {

BatchResult RunOne(const BimatrixGame& game, const MixedProfile& start,
                   double horizon, const SimulationOptions& options) {
  BatchResult result;
  result.initial = start;
  try {
    const Trajectory trajectory = Simulate(game, start, horizon, options);
    result.final_state = trajectory.StateAt(trajectory.t_now());
    result.average_payoffs = trajectory.AveragePayoffAt(trajectory.t_now());
    result.segments = static_cast<int64_t>(trajectory.segments().size());
    result.termination = trajectory.termination();
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

void CheckBatchGame(const BimatrixGame& game) {
  const GenericityReport report = CheckGenericity(game);
  Require(!report.degenerate, ErrorKind::kDegenerate,
          "degenerate game: " + report.reason);
}

Eigen::VectorXd GridPoint(int dim, int a, int per_side) {
  Eigen::VectorXd x(dim);
  x[0] = (a + 1.0) / (per_side + 1.0);
  if (dim == 2) {
    x[1] = 1.0 - x[0];
    return x;
  }
  double total = 0.0;
  for (int k = 1; k < dim; ++k) {
    const double frac = std::fmod((a + 1.0) * std::sqrt(k + 1.0), 1.0);
    x[k] = 1.0 + 0.5 * frac;
    total += x[k];
  }
  x.tail(dim - 1) *= (1.0 - x[0]) / total;
  return x;
}

}  // namespace

int ResolveWorkers(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

std::vector<BatchResult> SimulateBatch(const BimatrixGame& game,
                                       const std::vector<MixedProfile>& starts,
                                       double horizon,
                                       const SimulationOptions& options,
                                       int workers) {
  CheckBatchGame(game);
  std::vector<BatchResult> results(starts.size());
  const int count = static_cast<int>(starts.size());
#pragma omp parallel for schedule(dynamic) num_threads(ResolveWorkers(workers))
  for (int k = 0; k < count; ++k) {
    results[k] = RunOne(game, starts[k], horizon, options);
  }
  return results;
}

std::vector<BatchResult> SimulateBatchSerial(
    const BimatrixGame& game, const std::vector<MixedProfile>& starts,
    double horizon, const SimulationOptions& options) {
  CheckBatchGame(game);
  std::vector<BatchResult> results;
  results.reserve(starts.size());
  for (const auto& start : starts) {
    results.push_back(RunOne(game, start, horizon, options));
  }
  return results;
}

std::vector<MixedProfile> GridStarts(int m, int n, int per_side) {
  Require(per_side >= 1, ErrorKind::kInvalidArgument,
          "grid size must be >= 1");
  std::vector<MixedProfile> starts;
  for (int a = 0; a < per_side; ++a) {
    for (int b = 0; b < per_side; ++b) {
      starts.push_back(MixedProfile::Make(GridPoint(m, a, per_side),
                                          GridPoint(n, b, per_side)));
    }
  }
  return starts;
}

std::vector<MixedProfile> RandomStarts(int m, int n, int count,
                                       uint64_t seed) {
  Require(count >= 0, ErrorKind::kInvalidArgument, "count must be >= 0");
  std::vector<MixedProfile> starts;
  for (int k = 0; k < count; ++k) {
    Rng rng(SplitSeed(seed, static_cast<uint64_t>(k)));
    Eigen::VectorXd p = SampleSimplex(rng, m);
    Eigen::VectorXd q = SampleSimplex(rng, n);
    starts.push_back(MixedProfile::Make(p, q));
  }
  return starts;
}

}  // namespace fpdyn
