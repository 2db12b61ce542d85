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
#ifndef FPDYN_DYNAMICS_H_
#define FPDYN_DYNAMICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fpdyn/equilibrium.h"
#include "fpdyn/game.h"

namespace fpdyn {

// Continuous-time fictitious play, integrated exactly. On a segment where
// the pure plays (e_i, e_j) are constant, p(t) = e_i + (t0 / t)(p(t0) - e_i)
// and likewise for q, so every state is affine in u = t0 / t and every
// candidate indifference crossing is one linear equation in u.

// Plays marked with this index are the completely mixed Nash pair (only in
// stationary trajectories).
inline constexpr int kMixedPlay = -1;

// Ties within this fraction of a matrix's entry spread are resolved as ties
// when choosing the next region at a crossing.
inline constexpr double kBoundaryTieTolerance = 1e-8;
// Crossings whose gap slope (in u) is below this fraction of the entry
// spread are grazing contacts and are skipped.
inline constexpr double kGrazingTolerance = 1e-12;
// Two crossings closer than this relative distance in u are simultaneous.
inline constexpr double kSimultaneousTolerance = 1e-9;
// Largest admissible u for a crossing; anything closer to 1 is immediate.
inline constexpr double kMaxCrossingU = 1.0 - 1e-13;
// Consecutive zero-length switches tolerated before declaring sliding.
inline constexpr int kMaxImmediateSwitches = 16;

struct Segment {
  double t_start = 1.0;
  double t_end = 1.0;
  int i = 0;  // x(t) = e_i
  int j = 0;  // y(t) = e_j
  Eigen::VectorXd p_start;
  Eigen::VectorXd q_start;
  // Integrals of x A y and x B y over [0, t_start].
  double integral_a_start = 0.0;
  double integral_b_start = 0.0;

  double duration() const { return t_end - t_start; }
};

// Closed-form state on a segment. Throws kOutOfRange outside
// [t_start, t_end].
MixedProfile SegmentState(const Segment& segment, double t);

// A segment that has started but whose end is not yet known.
struct SegmentStart {
  double t = 1.0;
  int i = 0;
  int j = 0;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
};

struct Crossing {
  // Earliest t > start.t at which the region is left, if before the horizon.
  std::optional<double> t_cross;
  Player player = Player::kA;  // who switches first
  RegionIndex new_region;      // singleton pair just past the crossing
  bool non_generic = false;    // simultaneous or ambiguous tie
  bool immediate = false;      // the state already sits on the exit boundary
};

Crossing NextCrossing(const BimatrixGame& game, const SegmentStart& start,
                      double horizon);

// Singleton region to follow from a state on (or near) indifference sets:
// among tied strategies the one that wins for t slightly later. Player A is
// resolved first, then B, repeated until stable. Sets *ambiguous when a tie
// cannot be broken by the forward rule (smallest index is used).
std::pair<int, int> ResolveRegion(const BimatrixGame& game,
                                  const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& q, int i_hint,
                                  int j_hint, bool* ambiguous);

enum class Termination { kHorizon, kEventCap, kSlidingSuspected };

struct SimulationOptions {
  int64_t max_events = 10'000'000;
  // Reporting checkpoints at t = 10^(k / checkpoints_per_decade).
  int checkpoints_per_decade = 1;
};

struct TrajectoryEvent {
  double t = 0.0;
  std::string what;
};

class Trajectory {
 public:
  Trajectory(BimatrixGame game, MixedProfile initial);

  const BimatrixGame& game() const { return game_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const Eigen::MatrixXd& occupancy() const { return occupancy_; }
  double payoff_integral_a() const { return integral_a_; }
  double payoff_integral_b() const { return integral_b_; }
  double t_now() const { return t_now_; }
  // Play on [0, 1): the constant mixed pair (p(1), q(1)).
  const MixedProfile& initial_window() const { return initial_; }
  bool stationary() const { return stationary_; }
  Termination termination() const { return termination_; }
  bool truncated() const { return termination_ != Termination::kHorizon; }
  const std::vector<TrajectoryEvent>& events() const { return events_; }
  const std::vector<double>& checkpoints() const { return checkpoints_; }

  // Index of the segment containing t (the later one at a boundary).
  int SegmentIndexAt(double t) const;
  MixedProfile StateAt(double t) const;
  // (integral of x A y, integral of x B y) over [0, t].
  std::pair<double, double> PayoffIntegralAt(double t) const;
  // Running averages (rho_A(t), rho_B(t)).
  std::pair<double, double> AveragePayoffAt(double t) const;
  JointDistribution EmpiricalDistribution() const;

 private:
  friend Trajectory Simulate(const BimatrixGame&, const MixedProfile&, double,
                             const SimulationOptions&);
  void CheckTime(double t) const;

  BimatrixGame game_;
  MixedProfile initial_;
  std::vector<Segment> segments_;
  Eigen::MatrixXd occupancy_;
  double integral_a_ = 0.0;
  double integral_b_ = 0.0;
  double t_now_ = 1.0;
  bool stationary_ = false;
  Termination termination_ = Termination::kHorizon;
  std::vector<TrajectoryEvent> events_;
  std::vector<double> checkpoints_;
};

// Runs FP from (p(1), q(1)) = initial up to the horizon. Throws kDegenerate
// for non-generic games. A start within 1e-12 of the completely mixed Nash
// equilibrium yields the stationary trajectory.
Trajectory Simulate(const BimatrixGame& game, const MixedProfile& initial,
                    double horizon, const SimulationOptions& options = {});

// (rho_A(T) - max_i (A q(T))_i, rho_B(T) - max_j (p(T) B)_j). For T >= 1,
// T * gap is constant along every orbit.
std::pair<double, double> BeliefGap(const Trajectory& trajectory, double t);

// Log-spaced reporting times in [1, horizon], always including the horizon.
std::vector<double> EpochCheckpoints(double horizon, int per_decade);

}  // namespace fpdyn

#endif  // FPDYN_DYNAMICS_H_
