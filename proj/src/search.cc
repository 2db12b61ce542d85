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
#include "fpdyn/search.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <omp.h>

#include "fpdyn/batch.h"
#include "fpdyn/error.h"
#include "fpdyn/geometry.h"
#include "fpdyn/random.h"

namespace fpdyn {
namespace {

// Angular margins tried when widening a cone past the outermost points.
constexpr double kConeMargins[] = {0.02, 0.05, 0.1, 0.2, 0.35, 0.5};
constexpr int kMembershipSamples = 1000;

struct Candidate {
  int64_t trial;
  BimatrixGame game;
};

int64_t MaxTrials(const SearchConfig& config) {
  return config.max_trials > 0 ? config.max_trials
                               : 1000 * static_cast<int64_t>(config.count) + 1000;
}

void CheckConfig(const SearchConfig& config) {
  Require(config.count >= 0, ErrorKind::kInvalidArgument,
          "count must be >= 0");
  Require(config.dimension >= 2, ErrorKind::kInvalidArgument,
          "dimension must be >= 2");
  Require(config.horizon > 1.0, ErrorKind::kInvalidArgument,
          "horizon must be > 1");
  Require(config.entry_low < config.entry_high, ErrorKind::kInvalidArgument,
          "empty entry range");
  Require(config.starts_per_game >= 1, ErrorKind::kInvalidArgument,
          "starts_per_game must be >= 1");
  Require(config.verify_periods >= 1, ErrorKind::kInvalidArgument,
          "verify_periods must be >= 1");
}

// Draws games until `count` are accepted. Cheap relative to the analysis,
// so it runs serially and fixes the trial indices independently of
// scheduling.
std::vector<Candidate> Candidates(const SearchConfig& config,
                                  SearchResult* result) {
  std::vector<Candidate> out;
  for (size_t k = 0; k < config.injected.size(); ++k) {
    out.push_back({-static_cast<int64_t>(k) - 1, config.injected[k]});
    result->log.push_back("trial " + std::to_string(-static_cast<int64_t>(k) - 1) +
                          ": injected game " + config.injected[k].name());
  }
  const int64_t max_trials = MaxTrials(config);
  const int d = config.dimension;
  for (int64_t trial = 0;
       result->accepted < config.count && trial < max_trials; ++trial) {
    ++result->trials;
    Rng rng(SplitSeed(config.seed, static_cast<uint64_t>(trial)));
    Eigen::MatrixXd a =
        SampleMatrix(rng, d, d, config.entry_low, config.entry_high);
    Eigen::MatrixXd b =
        SampleMatrix(rng, d, d, config.entry_low, config.entry_high);
    BimatrixGame game(std::move(a), std::move(b),
                      "random:" + std::to_string(config.seed) + ":" +
                          std::to_string(trial));
    if (!InteriorNash(game)) {
      ++result->rejected_no_nash;
      result->log.push_back("trial " + std::to_string(trial) +
                            ": rejected (no unique interior Nash equilibrium)");
      continue;
    }
    if (CheckGenericity(game).degenerate) {
      ++result->rejected_degenerate;
      result->log.push_back("trial " + std::to_string(trial) +
                            ": rejected (degenerate)");
      continue;
    }
    ++result->accepted;
    out.push_back({trial, std::move(game)});
  }
  return out;
}

std::vector<MixedProfile> TrialStarts(const BimatrixGame& game, int64_t trial,
                                      const SearchConfig& config) {
  // Stream offset keeps start draws apart from the game draws of trial k.
  return RandomStarts(game.rows(), game.cols(), config.starts_per_game,
                      SplitSeed(config.seed ^ 0xA5A5A5A5ULL,
                                static_cast<uint64_t>(trial + (1LL << 40))));
}

SearchResult RunSearch(const SearchConfig& config, bool parallel) {
  CheckConfig(config);
  SearchResult result;
  const std::vector<Candidate> candidates = Candidates(config, &result);
  const int count = static_cast<int>(candidates.size());
  std::vector<std::optional<SearchFinding>> found(count);
  std::vector<std::string> notes(count);
  auto analyze = [&](int k) {
    try {
      found[k] = AnalyzeGame(candidates[k].game, candidates[k].trial, config,
                             &notes[k]);
    } catch (const std::exception& e) {
      notes[k] = std::string("error: ") + e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic) \
    num_threads(ResolveWorkers(config.workers))
    for (int k = 0; k < count; ++k) analyze(k);
  } else {
    for (int k = 0; k < count; ++k) analyze(k);
  }
  for (int k = 0; k < count; ++k) {
    result.log.push_back("trial " + std::to_string(candidates[k].trial) +
                         ": " + notes[k]);
    if (found[k]) result.findings.push_back(std::move(*found[k]));
  }
  std::sort(result.findings.begin(), result.findings.end(),
            [](const SearchFinding& x, const SearchFinding& y) {
              return x.trial < y.trial;
            });
  return result;
}

}  // namespace

std::optional<ConeSpec> BuildCone(const BimatrixGame& game, const RaySet& rays,
                                  const std::vector<Eigen::VectorXd>& points,
                                  Player side) {
  if (game.rows() != 3 || game.cols() != 3 || points.empty()) {
    return std::nullopt;
  }
  const Eigen::VectorXd& apex =
      side == Player::kA ? rays.nash.profile.q : rays.nash.profile.p;
  const Eigen::MatrixXd basis = TangentBasis(3);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  std::vector<double> angles;
  for (const auto& point : points) {
    const Eigen::Vector2d c = basis.transpose() * (point - apex);
    if (c.norm() <= 1e-12) return std::nullopt;
    angles.push_back(std::atan2(c[1], c[0]));
  }
  std::sort(angles.begin(), angles.end());
  // The arc covering all points is the complement of the largest gap.
  double gap = angles.front() + kTwoPi - angles.back();
  double start = angles.front();
  for (size_t k = 1; k < angles.size(); ++k) {
    if (angles[k] - angles[k - 1] > gap) {
      gap = angles[k] - angles[k - 1];
      start = angles[k];
    }
  }
  const double width = kTwoPi - gap;

  auto extreme = [&](double angle) {
    const Eigen::VectorXd dir =
        basis * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    return Eigen::VectorXd(apex + 0.5 * MaxInteriorStep(apex, dir) * dir);
  };
  const auto& ray_directions =
      side == Player::kA ? rays.directions_a : rays.directions_b;
  for (double margin : kConeMargins) {
    if (width + 2.0 * margin >= std::numbers::pi - 1e-3) break;
    ConeSpec cone;
    cone.apex = apex;
    cone.extreme_points = {extreme(start - margin),
                           extreme(start + width + margin)};
    cone.contains_ray_index = -1;
    for (int k = 0; k < 3; ++k) {
      const Eigen::VectorXd lambda =
          ConeCoordinates(cone, apex + ray_directions[k]);
      if (lambda.minCoeff() > 1e-12 * lambda.lpNorm<1>()) {
        cone.contains_ray_index = k;
        break;
      }
    }
    if (cone.contains_ray_index < 0) continue;
    if (ValidateCone(game, rays, cone, side).empty()) return cone;
  }
  return std::nullopt;
}

bool ReverifyFinding(const SearchFinding& finding, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  try {
    const BimatrixGame& game = finding.transformed;
    const Trajectory trajectory = Simulate(game, finding.start, finding.horizon);
    const Itinerary itinerary = DetectCycle(trajectory, finding.cycle_tol);
    if (!itinerary.periodic) return fail("transformed orbit not periodic");
    const auto nash = InteriorNash(game);
    if (!nash) return fail("transformed game lost its interior Nash point");

    std::vector<Eigen::VectorXd> ps, qs;
    for (const auto& v : CycleVertices(trajectory, itinerary)) {
      ps.push_back(v.p);
      qs.push_back(v.q);
    }
    if (!HalfspaceContainment(ps, nash->profile.p) ||
        !HalfspaceContainment(qs, nash->profile.q)) {
      return fail("cycle projections not in open halfspaces");
    }

    const auto [t_a, t_b] = PeriodWindow(trajectory, itinerary, 1);
    for (int s = 0; s < kMembershipSamples; ++s) {
      const double t =
          t_a * std::pow(t_b / t_a, (s + 0.5) / kMembershipSamples);
      const auto [p_in, q_in] =
          SubNashMembership(game, *nash, trajectory.StateAt(t));
      if (!p_in || !q_in) return fail("cycle state outside a sub-Nash cone");
    }

    const auto window =
        PeriodWindow(trajectory, itinerary, finding.verify_periods);
    const DominanceReport report = CompareToNash(
        game, trajectory, *nash, window.first, trajectory.t_now());
    if (report.classification != Dominance::kNashAllTimes) {
      return fail("dominance is " + DominanceName(report.classification));
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return true;
}

std::optional<SearchFinding> AnalyzeGame(const BimatrixGame& game,
                                         int64_t trial,
                                         const SearchConfig& config,
                                         std::string* note) {
  auto say = [&](const std::string& what) {
    if (note) *note = what;
  };
  const RaySet rays = ComputeRays(game);
  const std::vector<MixedProfile> starts = TrialStarts(game, trial, config);
  std::string last = "no periodic orbit";
  for (const auto& start : starts) {
    const Trajectory trajectory = Simulate(game, start, config.horizon);
    const Itinerary itinerary = DetectCycle(trajectory, config.cycle_tol);
    if (!itinerary.periodic) continue;
    std::vector<Eigen::VectorXd> ps, qs;
    for (const auto& v : CycleVertices(trajectory, itinerary)) {
      ps.push_back(v.p);
      qs.push_back(v.q);
    }
    if (!HalfspaceContainment(ps, rays.nash.profile.p) ||
        !HalfspaceContainment(qs, rays.nash.profile.q)) {
      last = "cycle of period " + std::to_string(*itinerary.period_length) +
             " surrounds the Nash point";
      continue;
    }
    const auto cone_b = BuildCone(game, rays, qs, Player::kA);
    const auto cone_a = BuildCone(game, rays, ps, Player::kB);
    if (!cone_a || !cone_b) {
      last = "contained cycle but no valid cone";
      continue;
    }
    ConeTargetedResult equivalent{game, LinearTransform::Identity(3, 3)};
    try {
      equivalent = ConeTargetedEquivalent(game, *cone_a, *cone_b);
    } catch (const Error& e) {
      last = std::string("cone transform failed: ") + e.what();
      continue;
    }

    SearchFinding finding(game, equivalent.game);
    finding.trial = trial;
    finding.transform = equivalent.transform;
    finding.start = start;
    finding.cone_a = *cone_a;
    finding.cone_b = *cone_b;
    finding.horizon = config.horizon;
    finding.cycle_tol = config.cycle_tol;
    finding.verify_periods = config.verify_periods;
    const auto nash = InteriorNash(equivalent.game);
    if (!nash) {
      last = "transformed game has no interior Nash point";
      continue;
    }
    finding.nash = *nash;
    const Trajectory replay =
        Simulate(equivalent.game, start, config.horizon);
    finding.itinerary = DetectCycle(replay, config.cycle_tol);
    if (!finding.itinerary.periodic) {
      last = "transformed orbit not periodic";
      continue;
    }
    finding.cycle_states = CycleVertices(replay, finding.itinerary);
    try {
      const auto window =
          PeriodWindow(replay, finding.itinerary, config.verify_periods);
      finding.dominance = CompareToNash(equivalent.game, replay, *nash,
                                        window.first, replay.t_now());
    } catch (const Error& e) {
      last = e.what();
      continue;
    }
    std::string why;
    if (!ReverifyFinding(finding, &why)) {
      last = "re-verification failed: " + why;
      continue;
    }
    say("hit: period " + std::to_string(*finding.itinerary.period_length) +
        ", Nash-dominated at all times");
    return finding;
  }
  say(last);
  return std::nullopt;
}

SearchResult SearchSubNash(const SearchConfig& config) {
  return RunSearch(config, true);
}

SearchResult SearchSubNashSerial(const SearchConfig& config) {
  return RunSearch(config, false);
}

}  // namespace fpdyn
