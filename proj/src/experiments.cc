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
#include "fpdyn/experiments.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fpdyn/batch.h"
#include "fpdyn/builtin_games.h"
#include "fpdyn/equivalence.h"
#include "fpdyn/error.h"
#include "fpdyn/random.h"
#include "fpdyn/reference_integrator.h"

namespace fpdyn {
namespace {

// Tolerances of the reproduction targets.
constexpr double kBetaNashTol = 1e-12;
constexpr double kSection5StrategyTol = 2e-3;
constexpr double kSection5PayoffTol = 1e-6;
constexpr double kPeriodAvgA[2] = {-0.7, -0.3};
constexpr double kPeriodAvgB[2] = {-0.4, -0.1};
constexpr double kBetaPayoffMargin = 1e-4;
constexpr double kGapIdentityTol = 1e-8;
constexpr double kCceTol = 1e-3;
constexpr double kCceHorizon = 1e5;
constexpr double kIntegratorTol = 1e-3;
constexpr double kIntegratorHorizon = 100.0;
constexpr double kPrisonersTrajectoryTol = 1e-9;
constexpr double kPrisonersLimitTol = 1e-3;
constexpr double kPrisonersHorizon = 1e4;

constexpr uint64_t kExperimentSeed = 20240917;

std::string Fmt(double x) {
  std::ostringstream out;
  out.precision(4);
  out << x;
  return out.str();
}

double SupDiff(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return (x - y).cwiseAbs().maxCoeff();
}

MixedProfile GenericStart(int m, int n, uint64_t stream) {
  return RandomStarts(m, n, 1, SplitSeed(kExperimentSeed, stream)).front();
}

CriterionResult BetaNash() {
  CriterionResult r{1, "beta-nash", "beta-family interior Nash", true, ""};
  double worst_strategy = 0.0, worst_payoff = 0.0;
  for (double beta : {0.2, 0.5, 0.8}) {
    const auto nash = InteriorNash(BetaFamilyGame(beta));
    if (!nash) {
      r.passed = false;
      r.detail = "no interior Nash for beta=" + Fmt(beta);
      return r;
    }
    const Eigen::VectorXd third = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
    worst_strategy = std::max({worst_strategy, SupDiff(nash->profile.p, third),
                               SupDiff(nash->profile.q, third)});
    worst_payoff = std::max(
        {worst_payoff, std::abs(nash->payoff_a - (1.0 + beta) / 3.0),
         std::abs(nash->payoff_b - (1.0 - beta) / 3.0)});
  }
  r.passed = worst_strategy <= kBetaNashTol && worst_payoff <= kBetaNashTol;
  r.detail = "max strategy error " + Fmt(worst_strategy) +
             ", max payoff error " + Fmt(worst_payoff) + " (tol 1e-12)";
  return r;
}

CriterionResult Section5Nash() {
  CriterionResult r{2, "section5-nash", "8-cycle game Nash point", false, ""};
  const auto nash = InteriorNash(Section5Game());
  if (!nash) {
    r.detail = "no interior Nash";
    return r;
  }
  Eigen::VectorXd p_ref(3), q_ref(3);
  p_ref << 0.288, 0.370, 0.342;
  q_ref << 0.335, 0.327, 0.338;
  const double strategy_error = std::max(SupDiff(nash->profile.p, p_ref),
                                         SupDiff(nash->profile.q, q_ref));
  const double payoff_error =
      std::max(std::abs(nash->payoff_a), std::abs(nash->payoff_b));
  const bool strategies_ok = strategy_error <= kSection5StrategyTol;
  const bool payoffs_ok = payoff_error <= kSection5PayoffTol;
  r.passed = strategies_ok && payoffs_ok;
  r.detail = "strategy error " + Fmt(strategy_error) + " (tol 2e-3, " +
             (strategies_ok ? "ok" : "FAIL") + "), payoffs (" +
             Fmt(nash->payoff_a) + ", " + Fmt(nash->payoff_b) +
             ") vs 0 (tol 1e-6, " + (payoffs_ok ? "ok" : "FAIL") + ")";
  return r;
}

CriterionResult Section5Cycle() {
  CriterionResult r{3, "section5", "8-cycle and Nash dominance", false, ""};
  const Section5Run run = RunSection5();
  if (!run.itinerary.periodic) {
    r.detail = "no cycle detected: " + run.itinerary.diagnostic;
    return r;
  }
  const bool itinerary_ok =
      *run.itinerary.period_length == 8 &&
      CyclicallyEqual(run.itinerary.Block(), Section5Itinerary());
  double lo_a = INFINITY, hi_a = -INFINITY, lo_b = INFINITY, hi_b = -INFINITY;
  for (const auto& [a, b] : run.period_averages) {
    lo_a = std::min(lo_a, a);
    hi_a = std::max(hi_a, a);
    lo_b = std::min(lo_b, b);
    hi_b = std::max(hi_b, b);
  }
  const bool periods_ok = lo_a >= kPeriodAvgA[0] && hi_a <= kPeriodAvgA[1] &&
                          lo_b >= kPeriodAvgB[0] && hi_b <= kPeriodAvgB[1];
  const bool negative_ok =
      run.dominance.max_avg_a < 0.0 && run.dominance.max_avg_b < 0.0;
  r.passed = itinerary_ok && periods_ok && negative_ok;
  r.detail = "period " + std::to_string(*run.itinerary.period_length) +
             (itinerary_ok ? " matches" : " does NOT match") +
             ", return error " + Fmt(run.itinerary.return_map_error) +
             ", per-period A in [" + Fmt(lo_a) + ", " + Fmt(hi_a) +
             "], B in [" + Fmt(lo_b) + ", " + Fmt(hi_b) +
             "], max running avg (" + Fmt(run.dominance.max_avg_a) + ", " +
             Fmt(run.dominance.max_avg_b) + "), " +
             DominanceName(run.dominance.classification);
  return r;
}

CriterionResult BetaPayoff() {
  CriterionResult r{4, "beta-payoff", "beta = 0.5 FP beats Nash", true, ""};
  const double beta = 0.5;
  const BimatrixGame game = BetaFamilyGame(beta);
  const auto nash = InteriorNash(game);
  double worst_a = INFINITY, worst_b = INFINITY;
  for (const auto& start :
       RandomStarts(3, 3, 5, SplitSeed(kExperimentSeed, 4))) {
    const Trajectory trajectory = Simulate(game, start, 1e5);
    const DominanceReport report =
        CompareToNash(game, trajectory, *nash, 1e3, 1e5);
    worst_a = std::min(worst_a, report.min_avg_a - (1.0 + beta) / 3.0);
    worst_b = std::min(worst_b, report.min_avg_b - (1.0 - beta) / 3.0);
  }
  r.passed = worst_a >= kBetaPayoffMargin && worst_b >= kBetaPayoffMargin;
  r.detail = "smallest excess over Nash on [1e3, 1e5]: A " + Fmt(worst_a) +
             ", B " + Fmt(worst_b) + " (margin 1e-4)";
  return r;
}

CriterionResult BeliefGapIdentity() {
  CriterionResult r{5, "belief-gap", "T * belief gap is constant", true, ""};
  std::vector<BimatrixGame> games;
  for (const auto& key : BuiltinKeys()) games.push_back(BuiltinGame(key));
  Rng rng(SplitSeed(kExperimentSeed, 5));
  while (games.size() < BuiltinKeys().size() + 3) {
    BimatrixGame game(SampleMatrix(rng, 3, 3), SampleMatrix(rng, 3, 3),
                      "random");
    if (!CheckGenericity(game).degenerate) games.push_back(game);
  }
  double worst = 0.0, largest_c = 0.0;
  for (size_t g = 0; g < games.size(); ++g) {
    const BimatrixGame& game = games[g];
    const Trajectory trajectory = Simulate(
        game, GenericStart(game.rows(), game.cols(), 50 + g), 1e4);
    const auto [c_a, c_b] = BeliefGap(trajectory, 10.0);
    for (double t : {10.0, 1e2, 1e3, 1e4}) {
      const auto [gap_a, gap_b] = BeliefGap(trajectory, t);
      const double ref_a = 10.0 * c_a, ref_b = 10.0 * c_b;
      worst = std::max({worst,
                        std::abs(t * gap_a - ref_a) / std::max(std::abs(ref_a), 1e-300),
                        std::abs(t * gap_b - ref_b) / std::max(std::abs(ref_b), 1e-300)});
      largest_c = std::max({largest_c, std::abs(t * gap_a), std::abs(t * gap_b)});
    }
  }
  r.passed = worst <= kGapIdentityTol;
  r.detail = std::to_string(games.size()) + " games, max relative drift " +
             Fmt(worst) + " (tol 1e-8), |gap| <= C/T with C = " +
             Fmt(largest_c);
  return r;
}

CriterionResult Cce() {
  CriterionResult r{6, "cce", "CCE convergence", true, ""};
  double worst_external = -INFINITY;
  const auto games =
      RandomGamesWithInteriorNash(20, 3, SplitSeed(kExperimentSeed, 6));
  for (size_t g = 0; g < games.size(); ++g) {
    const Trajectory trajectory =
        Simulate(games[g], GenericStart(3, 3, 600 + g), kCceHorizon);
    const RegretReport report =
        Regret(games[g], trajectory.EmpiricalDistribution());
    worst_external = std::max(worst_external, report.max_external);
  }
  bool beta_ok = true;
  std::string beta_detail;
  for (double beta : {0.2, 0.5, 0.8}) {
    const BimatrixGame game = BetaFamilyGame(beta);
    const Trajectory trajectory =
        Simulate(game, GenericStart(3, 3, 700), kCceHorizon);
    const JointDistribution dist = trajectory.EmpiricalDistribution();
    const RegretReport report = Regret(game, dist);
    const bool cce = std::abs(report.max_external) <= kCceTol &&
                     EquilibriumMembership(game, dist,
                                           EquilibriumKind::kCoarseCorrelated,
                                           kCceTol);
    const bool ce = EquilibriumMembership(game, dist,
                                          EquilibriumKind::kCorrelated, kCceTol);
    beta_ok = beta_ok && cce && !ce;
    beta_detail += " beta=" + Fmt(beta) + ": ext " + Fmt(report.max_external) +
                   ", int " + Fmt(report.max_internal) + ";";
  }
  r.passed = worst_external <= kCceTol && beta_ok;
  r.detail = "20 random games, max external regret " + Fmt(worst_external) +
             " (tol 1e-3);" + beta_detail +
             (beta_ok ? " CE rejected as expected" : " beta check FAILED");
  return r;
}

CriterionResult Dominant() {
  CriterionResult r{7, "dominant", "FP-dominant equivalent", true, ""};
  int failures = 0;
  std::string first_failure;
  const auto games =
      RandomGamesWithInteriorNash(100, 3, SplitSeed(kExperimentSeed, 78));
  for (const auto& game : games) {
    try {
      DominantEquivalent(game);
    } catch (const Error& e) {
      if (failures++ == 0) first_failure = e.what();
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(games.size()) + " games, " +
             std::to_string(failures) + " gate failures" +
             (first_failure.empty() ? "" : " (" + first_failure + ")");
  return r;
}

CriterionResult Rays() {
  CriterionResult r{8, "rays", "indifference rays", true, ""};
  double worst_residual = 0.0, worst_sigma = INFINITY;
  int failures = 0;
  const auto games =
      RandomGamesWithInteriorNash(100, 3, SplitSeed(kExperimentSeed, 78));
  for (const auto& game : games) {
    try {
      const RaySet rays = ComputeRays(game);
      worst_residual = std::max(worst_residual, RayResidual(game, rays));
      worst_sigma = std::min(worst_sigma, RayIndependence(rays));
    } catch (const Error&) {
      ++failures;
    }
  }
  r.passed = failures == 0 && worst_residual <= kRayTolerance &&
             worst_sigma > kIndependenceTolerance;
  r.detail = std::to_string(games.size()) + " games, max residual " +
             Fmt(worst_residual) + " (tol 1e-9), min singular value " +
             Fmt(worst_sigma) + " (> 1e-9), " + std::to_string(failures) +
             " errors";
  return r;
}

CriterionResult Integrator() {
  CriterionResult r{9, "integrator", "event-driven vs reference", true, ""};
  double worst = 0.0;
  std::string worst_key;
  const auto keys = BuiltinKeys();
  for (size_t k = 0; k < keys.size(); ++k) {
    const BimatrixGame game = BuiltinGame(keys[k]);
    const Trajectory trajectory =
        Simulate(game, GenericStart(game.rows(), game.cols(), 900 + k),
                 kIntegratorHorizon);
    const double distance = ReferenceSupDistance(trajectory, kIntegratorHorizon);
    if (distance >= worst) {
      worst = distance;
      worst_key = keys[k];
    }
  }
  r.passed = worst <= kIntegratorTol;
  r.detail = std::to_string(keys.size()) + " built-in games, max sup-norm " +
             Fmt(worst) + " (" + worst_key + ", tol 1e-3)";
  return r;
}

CriterionResult Prisoners() {
  CriterionResult r{10, "prisoners", "prisoner's dilemma equivalence", true,
                    ""};
  const BimatrixGame original = PrisonersDilemma();
  const BimatrixGame equivalent = PrisonersDilemmaEquivalent();
  double worst_difference = 0.0, worst_limit = 0.0;
  bool same_regions = true;
  const MixedProfile target = MixedProfile::Pure(2, 2, 1, 1);
  for (const auto& start : GridStarts(2, 2, 5)) {
    const Trajectory t1 = Simulate(original, start, kPrisonersHorizon);
    const Trajectory t2 = Simulate(equivalent, start, kPrisonersHorizon);
    same_regions = same_regions && t1.segments().size() == t2.segments().size();
    for (size_t s = 0; same_regions && s < t1.segments().size(); ++s) {
      same_regions = t1.segments()[s].i == t2.segments()[s].i &&
                     t1.segments()[s].j == t2.segments()[s].j;
    }
    for (int k = 0; k <= 400; ++k) {
      const double t = std::pow(kPrisonersHorizon, k / 400.0);
      const MixedProfile x = t1.StateAt(t), y = t2.StateAt(t);
      worst_difference = std::max(
          {worst_difference, SupDiff(x.p, y.p), SupDiff(x.q, y.q)});
    }
    const MixedProfile end = t1.StateAt(kPrisonersHorizon);
    worst_limit = std::max(
        {worst_limit, SupDiff(end.p, target.p), SupDiff(end.q, target.q)});
  }
  r.passed = same_regions && worst_difference <= kPrisonersTrajectoryTol &&
             worst_limit <= kPrisonersLimitTol;
  r.detail = "25 starts, max trajectory difference " + Fmt(worst_difference) +
             " (tol 1e-9), max distance to (2,2) at T=1e4 " +
             Fmt(worst_limit) + " (tol 1e-3)" +
             (same_regions ? "" : ", region sequences differ");
  return r;
}

struct Target {
  const char* key;
  std::function<CriterionResult()> run;
};

const std::vector<Target>& Targets() {
  static const std::vector<Target> targets = {
      {"beta-nash", BetaNash},        {"section5-nash", Section5Nash},
      {"section5", Section5Cycle},    {"beta-payoff", BetaPayoff},
      {"belief-gap", BeliefGapIdentity}, {"cce", Cce},
      {"dominant", Dominant},         {"rays", Rays},
      {"integrator", Integrator},     {"prisoners", Prisoners},
  };
  return targets;
}

}  // namespace

std::vector<std::string> ReproduceKeys() {
  std::vector<std::string> keys;
  for (const auto& target : Targets()) keys.push_back(target.key);
  return keys;
}

CriterionResult RunCriterion(const std::string& key) {
  const auto& targets = Targets();
  for (size_t k = 0; k < targets.size(); ++k) {
    if (key == targets[k].key || key == std::to_string(k + 1)) {
      return targets[k].run();
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown reproduce target: " + key);
}

std::vector<CriterionResult> RunAllCriteria() {
  std::vector<CriterionResult> results;
  for (const auto& target : Targets()) results.push_back(target.run());
  return results;
}

std::vector<BimatrixGame> RandomGamesWithInteriorNash(int count, int dimension,
                                                      uint64_t seed) {
  std::vector<BimatrixGame> games;
  for (uint64_t k = 0; static_cast<int>(games.size()) < count; ++k) {
    Require(k < 1000ULL * count + 1000, ErrorKind::kInternal,
            "too many rejected random games");
    Rng rng(SplitSeed(seed, k));
    BimatrixGame game(SampleMatrix(rng, dimension, dimension),
                      SampleMatrix(rng, dimension, dimension),
                      "random:" + std::to_string(seed) + ":" + std::to_string(k));
    if (InteriorNash(game) && !CheckGenericity(game).degenerate) {
      games.push_back(std::move(game));
    }
  }
  return games;
}

MixedProfile Section5Start() {
  Eigen::VectorXd p(3), q(3);
  p << 0.5, 0.3, 0.2;
  q << 0.2, 0.3, 0.5;
  return MixedProfile::Make(p, q);
}

std::vector<std::pair<int, int>> Section5Itinerary() {
  // (2,1) (2,2) (3,2) (3,3) (1,3) (1,2) (1,1) (3,1), one-based.
  return {{1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}, {0, 1}, {0, 0}, {2, 0}};
}

Section5Run RunSection5(double horizon) {
  const BimatrixGame game = Section5Game();
  const auto nash = InteriorNash(game);
  Require(nash.has_value(), ErrorKind::kInternal,
          "8-cycle game lost its interior Nash point");
  Trajectory trajectory = Simulate(game, Section5Start(), horizon);
  Itinerary itinerary = DetectCycle(trajectory);
  DominanceReport dominance;
  std::vector<std::pair<double, double>> averages;
  if (itinerary.periodic) {
    const auto window = PeriodWindow(trajectory, itinerary, kSection5Periods);
    dominance = CompareToNash(game, trajectory, *nash, window.first,
                              trajectory.t_now());
    averages = PerPeriodAverages(trajectory, itinerary, kSection5Periods);
  } else {
    dominance = CompareToNash(game, trajectory, *nash, 1.0, trajectory.t_now());
  }
  return Section5Run{std::move(trajectory), std::move(itinerary), *nash,
                     dominance, std::move(averages)};
}

}  // namespace fpdyn
