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
#include "fpdyn/orbit_analysis.h"

#include <algorithm>
#include <cmath>

#include "fpdyn/error.h"
#include "fpdyn/geometry.h"

namespace fpdyn {
namespace {

double SupDistance(const Segment& a, const Segment& b) {
  return std::max((a.p_start - b.p_start).cwiseAbs().maxCoeff(),
                  (a.q_start - b.q_start).cwiseAbs().maxCoeff());
}

int LastReturn(const Itinerary& itinerary) {
  Require(itinerary.periodic && itinerary.period_length.has_value() &&
              !itinerary.returns.empty(),
          ErrorKind::kInvalidArgument, "itinerary is not periodic");
  return itinerary.returns.back();
}

}  // namespace

std::vector<std::pair<int, int>> Itinerary::Block() const {
  std::vector<std::pair<int, int>> block;
  if (!periodic || !period_length || returns.empty()) return block;
  const int first = returns.back();
  for (int k = 0; k < *period_length; ++k) {
    block.emplace_back(steps[first + k].i, steps[first + k].j);
  }
  return block;
}

Itinerary BuildItinerary(const Trajectory& trajectory) {
  Itinerary itinerary;
  const auto& segments = trajectory.segments();
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    itinerary.steps.push_back(
        {segments[s].i, segments[s].j, segments[s].t_start, s});
  }
  return itinerary;
}

Itinerary DetectCycle(const Trajectory& trajectory, double tol) {
  Require(tol > 0.0, ErrorKind::kInvalidArgument, "tolerance must be > 0");
  Itinerary itinerary = BuildItinerary(trajectory);
  if (trajectory.stationary()) {
    itinerary.diagnostic = "stationary trajectory";
    return itinerary;
  }
  if (trajectory.truncated()) {
    itinerary.diagnostic = "trajectory truncated before the horizon";
    return itinerary;
  }
  const auto& steps = itinerary.steps;
  const int n = static_cast<int>(steps.size());
  auto same = [&](int a, int b) {
    return steps[a].i == steps[b].i && steps[a].j == steps[b].j;
  };
  int period = 0;
  for (int len = 2; len <= kMaxPeriod && (kCycleReturns + 1) * len <= n;
       ++len) {
    bool repeats = true;
    for (int k = 0; k < kCycleReturns * len && repeats; ++k) {
      repeats = same(n - 1 - k, n - 1 - k - len);
    }
    if (repeats) {
      period = len;
      break;
    }
  }
  if (period == 0) {
    itinerary.diagnostic =
        n < 2 * (kCycleReturns + 1) ? "too few region switches for a cycle"
                                    : "no repeating block of region pairs";
    return itinerary;
  }

  const auto& segments = trajectory.segments();
  for (int r = kCycleReturns; r >= 0; --r) {
    itinerary.returns.push_back(n - (r + 1) * period);
  }
  bool converged = true;
  for (size_t r = 1; r < itinerary.returns.size(); ++r) {
    const double error = SupDistance(segments[itinerary.returns[r]],
                                     segments[itinerary.returns[r - 1]]);
    itinerary.return_map_error = error;
    converged = converged && error < tol;
  }
  itinerary.periodic = converged;
  if (converged) {
    itinerary.period_length = period;
  } else {
    itinerary.diagnostic = "block of length " + std::to_string(period) +
                           " repeats but the return map has not converged";
  }
  return itinerary;
}

bool CyclicallyEqual(const std::vector<std::pair<int, int>>& a,
                     const std::vector<std::pair<int, int>>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const size_t n = a.size();
  for (size_t shift = 0; shift < n; ++shift) {
    bool equal = true;
    for (size_t k = 0; k < n && equal; ++k) equal = a[k] == b[(k + shift) % n];
    if (equal) return true;
  }
  return false;
}

std::pair<double, double> PeriodWindow(const Trajectory& trajectory,
                                       const Itinerary& itinerary,
                                       int periods) {
  const int last = LastReturn(itinerary);
  const int first = last - periods * *itinerary.period_length;
  Require(periods >= 1 && first >= 0, ErrorKind::kOutOfRange,
          "trajectory holds fewer complete periods than requested");
  return {trajectory.segments()[first].t_start,
          trajectory.segments()[last].t_start};
}

std::vector<std::pair<double, double>> PerPeriodAverages(
    const Trajectory& trajectory, const Itinerary& itinerary, int periods) {
  PeriodWindow(trajectory, itinerary, periods);  // range check
  const int last = LastReturn(itinerary);
  const int len = *itinerary.period_length;
  const BimatrixGame& game = trajectory.game();
  std::vector<std::pair<double, double>> out;
  for (int r = periods; r >= 1; --r) {
    // On a segment rho(t) = a + (I0 - a t0) / t, so the integral of
    // rho dt / t is a ln(t1 / t0) + (I0 - a t0)(1 / t0 - 1 / t1).
    double sum_a = 0.0, sum_b = 0.0;
    const int first = last - r * len;
    for (int s = first; s < first + len; ++s) {
      const Segment& seg = trajectory.segments()[s];
      const double a = game.a()(seg.i, seg.j), b = game.b()(seg.i, seg.j);
      const double log_ratio = std::log(seg.t_end / seg.t_start);
      const double inv = 1.0 / seg.t_start - 1.0 / seg.t_end;
      sum_a += a * log_ratio + (seg.integral_a_start - a * seg.t_start) * inv;
      sum_b += b * log_ratio + (seg.integral_b_start - b * seg.t_start) * inv;
    }
    const double span =
        std::log(trajectory.segments()[first + len].t_start /
                 trajectory.segments()[first].t_start);
    out.emplace_back(sum_a / span, sum_b / span);
  }
  return out;
}

std::string DominanceName(Dominance dominance) {
  switch (dominance) {
    case Dominance::kFpAllTimes:
      return "FP-dominates-at-all-times";
    case Dominance::kFpOnAverage:
      return "FP-dominates-on-average";
    case Dominance::kNashAllTimes:
      return "Nash-dominates-at-all-times";
    case Dominance::kNashOnAverage:
      return "Nash-dominates-on-average";
    case Dominance::kMixed:
      return "mixed";
    case Dominance::kEqual:
      return "equal";
  }
  return "mixed";
}

DominanceReport CompareToNash(const BimatrixGame& game,
                              const Trajectory& trajectory,
                              const NashPoint& nash, double t0, double t1,
                              double tol) {
  CheckDimensions(game, nash.profile);
  Require(t0 >= 1.0 && t0 <= t1 && t1 <= trajectory.t_now(),
          ErrorKind::kOutOfRange, "window must lie inside [1, t_now]");
  std::vector<double> times = {t0, t1};
  for (const auto& segment : trajectory.segments()) {
    if (segment.t_start > t0 && segment.t_start < t1) {
      times.push_back(segment.t_start);
    }
  }
  for (double t : trajectory.checkpoints()) {
    if (t > t0 && t < t1) times.push_back(t);
  }

  DominanceReport report;
  report.nash_payoffs = {nash.payoff_a, nash.payoff_b};
  report.window_start = t0;
  report.window_end = t1;
  report.avg_payoffs = trajectory.AveragePayoffAt(t1);
  report.min_avg_a = report.min_avg_b = INFINITY;
  report.max_avg_a = report.max_avg_b = -INFINITY;
  for (double t : times) {
    const auto [a, b] = trajectory.AveragePayoffAt(t);
    report.min_avg_a = std::min(report.min_avg_a, a);
    report.max_avg_a = std::max(report.max_avg_a, a);
    report.min_avg_b = std::min(report.min_avg_b, b);
    report.max_avg_b = std::max(report.max_avg_b, b);
  }
  report.evaluations = static_cast<int>(times.size());

  const double lo_a = report.min_avg_a - nash.payoff_a;
  const double hi_a = report.max_avg_a - nash.payoff_a;
  const double lo_b = report.min_avg_b - nash.payoff_b;
  const double hi_b = report.max_avg_b - nash.payoff_b;
  const double end_a = report.avg_payoffs.first - nash.payoff_a;
  const double end_b = report.avg_payoffs.second - nash.payoff_b;
  if (std::max({std::abs(lo_a), std::abs(hi_a), std::abs(lo_b),
                std::abs(hi_b)}) <= tol) {
    report.classification = Dominance::kEqual;
  } else if (lo_a > tol && lo_b > tol) {
    report.classification = Dominance::kFpAllTimes;
  } else if (hi_a < -tol && hi_b < -tol) {
    report.classification = Dominance::kNashAllTimes;
  } else if (end_a > tol && end_b > tol) {
    report.classification = Dominance::kFpOnAverage;
  } else if (end_a < -tol && end_b < -tol) {
    report.classification = Dominance::kNashOnAverage;
  } else {
    report.classification = Dominance::kMixed;
  }
  return report;
}

bool HalfspaceContainment(const std::vector<Eigen::VectorXd>& points,
                          const Eigen::VectorXd& apex) {
  return StrictlySeparable(points, apex);
}

std::vector<MixedProfile> CycleVertices(const Trajectory& trajectory,
                                        const Itinerary& itinerary) {
  const int first = LastReturn(itinerary);
  std::vector<MixedProfile> vertices;
  for (int k = 0; k < *itinerary.period_length; ++k) {
    const Segment& s = trajectory.segments()[first + k];
    vertices.push_back(MixedProfile{s.p_start, s.q_start});
  }
  return vertices;
}

}  // namespace fpdyn
