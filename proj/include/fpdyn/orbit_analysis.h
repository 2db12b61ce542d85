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
#ifndef FPDYN_ORBIT_ANALYSIS_H_
#define FPDYN_ORBIT_ANALYSIS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fpdyn/dynamics.h"
#include "fpdyn/equilibrium.h"

namespace fpdyn {

struct ItineraryStep {
  int i = 0;  // zero-based pure play of A
  int j = 0;  // zero-based pure play of B
  double t = 1.0;  // entry time
  int segment = 0;
};

struct Itinerary {
  std::vector<ItineraryStep> steps;
  bool periodic = false;
  std::optional<int> period_length;
  // Sup-norm distance between the last two returns to the section.
  double return_map_error = INFINITY;
  // Segment indices of the returns used for the decision, oldest first.
  std::vector<int> returns;
  std::string diagnostic;

  // The repeating block (one period, starting at the section) when periodic.
  std::vector<std::pair<int, int>> Block() const;
};

// Default return-map tolerance and number of consecutive returns that must
// agree within it.
inline constexpr double kCycleTolerance = 1e-6;
inline constexpr int kCycleReturns = 3;
inline constexpr int kMaxPeriod = 64;

// Region-pair sequence of the trajectory, without cycle detection.
Itinerary BuildItinerary(const Trajectory& trajectory);

// Looks for the shortest block repeating over the last kCycleReturns + 1
// periods; the section is the entry into the block's first pair, and the
// orbit is periodic when kCycleReturns consecutive return errors are < tol.
Itinerary DetectCycle(const Trajectory& trajectory,
                      double tol = kCycleTolerance);

// True when b is a cyclic rotation of a.
bool CyclicallyEqual(const std::vector<std::pair<int, int>>& a,
                     const std::vector<std::pair<int, int>>& b);

// Time window covering the last `periods` of a periodic itinerary.
std::pair<double, double> PeriodWindow(const Trajectory& trajectory,
                                       const Itinerary& itinerary,
                                       int periods);

// Per-period payoff levels over each of the last `periods` complete
// periods: the log-time mean (1 / ln(t1 / t0)) * integral of the running
// average rho(t) dt / t over the period, i.e. the value the running averages
// oscillate around. Unlike the plain time average over a period it does not
// depend on where the period is cut. Oldest period first.
std::vector<std::pair<double, double>> PerPeriodAverages(
    const Trajectory& trajectory, const Itinerary& itinerary, int periods);

enum class Dominance {
  kFpAllTimes,
  kFpOnAverage,
  kNashAllTimes,
  kNashOnAverage,
  kMixed,
  kEqual,
};

std::string DominanceName(Dominance dominance);

inline constexpr double kDominanceTolerance = 1e-6;

struct DominanceReport {
  Dominance classification = Dominance::kMixed;
  std::pair<double, double> avg_payoffs;   // at the window end
  std::pair<double, double> nash_payoffs;
  double min_avg_a = 0.0, max_avg_a = 0.0;
  double min_avg_b = 0.0, max_avg_b = 0.0;
  double window_start = 1.0, window_end = 1.0;
  int evaluations = 0;
};

// Compares running averages with the Nash payoffs over [t0, t1]. Running
// averages are monotone on each segment, so evaluating at every segment
// boundary and checkpoint inside the window gives the exact extremes.
DominanceReport CompareToNash(const BimatrixGame& game,
                              const Trajectory& trajectory,
                              const NashPoint& nash, double t0, double t1,
                              double tol = kDominanceTolerance);

// True iff a hyperplane through apex has every point strictly on one side.
bool HalfspaceContainment(const std::vector<Eigen::VectorXd>& points,
                          const Eigen::VectorXd& apex);

// Vertices of the last period of a periodic orbit (segment start states).
std::vector<MixedProfile> CycleVertices(const Trajectory& trajectory,
                                        const Itinerary& itinerary);

}  // namespace fpdyn

#endif  // FPDYN_ORBIT_ANALYSIS_H_
