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
#include "fpdyn/dynamics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpdyn/error.h"

namespace fpdyn {
namespace {

// v <- e_k + u (v - e_k).
Eigen::VectorXd Advance(const Eigen::VectorXd& v, int k, double u) {
  Eigen::VectorXd out = u * v;
  out[k] += 1.0 - u;
  return out;
}

Eigen::VectorXd Renormalize(const Eigen::VectorXd& v) {
  Eigen::VectorXd out = v.cwiseMax(0.0);
  return out / out.sum();
}

double EntrySpread(const Eigen::MatrixXd& m) {
  const double spread = m.maxCoeff() - m.minCoeff();
  return spread > 0.0 ? spread : 1.0;
}

// Among strategies tied (within tol) for the maximum of payoffs, the one
// whose payoff against the opponent's current pure play is largest; that is
// the strategy that stays ahead for t slightly later. current is preferred
// when it is part of an unbreakable tie.
int ForwardLeader(const Eigen::VectorXd& payoffs,
                  const Eigen::VectorXd& target_payoffs, int current,
                  double tol, bool* ambiguous) {
  const double best = payoffs.maxCoeff();
  int leader = -1;
  for (int k = 0; k < payoffs.size(); ++k) {
    if (payoffs[k] < best - tol) continue;
    if (leader < 0 || target_payoffs[k] > target_payoffs[leader] + tol) {
      leader = k;
    } else if (target_payoffs[k] >= target_payoffs[leader] - tol) {
      *ambiguous = true;
      if (k == current) leader = k;
    }
  }
  return leader;
}

}  // namespace

MixedProfile SegmentState(const Segment& segment, double t) {
  Require(t >= segment.t_start && t <= segment.t_end, ErrorKind::kOutOfRange,
          "time outside the segment");
  if (segment.i == kMixedPlay) {
    return MixedProfile{segment.p_start, segment.q_start};
  }
  const double u = segment.t_start / t;
  return MixedProfile{Advance(segment.p_start, segment.i, u),
                      Advance(segment.q_start, segment.j, u)};
}

std::pair<int, int> ResolveRegion(const BimatrixGame& game,
                                  const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& q, int i_hint,
                                  int j_hint, bool* ambiguous) {
  const Eigen::VectorXd aq = game.a() * q;
  const Eigen::VectorXd pb = game.b().transpose() * p;
  const double tol_a = kBoundaryTieTolerance * EntrySpread(game.a());
  const double tol_b = kBoundaryTieTolerance * EntrySpread(game.b());
  int i = i_hint, j = j_hint;
  if (i < 0) aq.maxCoeff(&i);
  if (j < 0) pb.maxCoeff(&j);
  bool local_ambiguous = false;
  for (int iter = 0; iter < 8; ++iter) {
    bool amb = false;
    const int next_i =
        ForwardLeader(aq, game.a().col(j), i, tol_a, &amb);
    const int next_j =
        ForwardLeader(pb, game.b().row(next_i).transpose(), j, tol_b, &amb);
    local_ambiguous = amb;
    if (next_i == i && next_j == j) {
      if (ambiguous) *ambiguous = local_ambiguous;
      return {i, j};
    }
    i = next_i;
    j = next_j;
  }
  if (ambiguous) *ambiguous = true;
  return {i, j};
}

Crossing NextCrossing(const BimatrixGame& game, const SegmentStart& start,
                      double horizon) {
  Require(horizon > start.t, ErrorKind::kOutOfRange,
          "horizon must lie after the segment start");
  Require(start.i >= 0 && start.i < game.rows() && start.j >= 0 &&
              start.j < game.cols(),
          ErrorKind::kOutOfRange, "segment plays out of range");
  const Eigen::MatrixXd& a = game.a();
  const Eigen::MatrixXd& b = game.b();
  const int i = start.i, j = start.j;

  // Largest u (earliest t) per player at which a rival ties the current play.
  double best_u[2] = {-1.0, -1.0};
  int best_count[2] = {0, 0};
  auto consider = [&](int player, double alpha, double gap_now,
                      double spread) {
    // Rival payoff minus current payoff is alpha + u (gap_now - alpha): at
    // u = 1 it is gap_now < 0, as u -> 0 it tends to alpha.
    if (alpha <= kGrazingTolerance * spread) return;
    const double u = gap_now >= 0.0 ? 1.0 : alpha / (alpha - gap_now);
    if (std::abs(u - best_u[player]) <= kSimultaneousTolerance * u) {
      ++best_count[player];
    } else if (u > best_u[player]) {
      best_u[player] = u;
      best_count[player] = 1;
    }
  };
  const Eigen::VectorXd aq = a * start.q;
  const Eigen::VectorXd pb = b.transpose() * start.p;
  const double spread_a = EntrySpread(a), spread_b = EntrySpread(b);
  for (int k = 0; k < game.rows(); ++k) {
    if (k != i) consider(0, a(k, j) - a(i, j), aq[k] - aq[i], spread_a);
  }
  for (int l = 0; l < game.cols(); ++l) {
    if (l != j) consider(1, b(i, l) - b(i, j), pb[l] - pb[j], spread_b);
  }

  Crossing crossing;
  const double u = std::max(best_u[0], best_u[1]);
  const double u_horizon = start.t / horizon;
  if (u <= u_horizon) {
    crossing.new_region = {{i}, {j}};
    return crossing;
  }
  crossing.player = best_u[0] >= best_u[1] ? Player::kA : Player::kB;
  crossing.non_generic =
      best_count[0] > 1 || best_count[1] > 1 ||
      (best_u[0] > 0.0 && best_u[1] > 0.0 &&
       std::abs(best_u[0] - best_u[1]) <= kSimultaneousTolerance * u);

  Eigen::VectorXd p, q;
  if (u > kMaxCrossingU) {
    crossing.immediate = true;
    crossing.t_cross = start.t;
    p = start.p;
    q = start.q;
  } else {
    crossing.t_cross = start.t / u;
    p = Renormalize(Advance(start.p, i, u));
    q = Renormalize(Advance(start.q, j, u));
  }
  bool ambiguous = false;
  const auto [ni, nj] = ResolveRegion(game, p, q, i, j, &ambiguous);
  crossing.non_generic = crossing.non_generic || ambiguous;
  crossing.new_region = {{ni}, {nj}};
  return crossing;
}

Trajectory::Trajectory(BimatrixGame game, MixedProfile initial)
    : game_(std::move(game)), initial_(std::move(initial)) {
  CheckDimensions(game_, initial_);
  occupancy_ = initial_.p * initial_.q.transpose();
  integral_a_ = initial_.p.dot(game_.a() * initial_.q);
  integral_b_ = initial_.p.dot(game_.b() * initial_.q);
}

void Trajectory::CheckTime(double t) const {
  Require(t >= 1.0 && t <= t_now_ * (1.0 + 1e-15), ErrorKind::kOutOfRange,
          "time outside the simulated range [1, t_now]");
}

int Trajectory::SegmentIndexAt(double t) const {
  CheckTime(t);
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double value, const Segment& s) { return value < s.t_start; });
  const int idx = static_cast<int>(it - segments_.begin()) - 1;
  return std::clamp(idx, 0, static_cast<int>(segments_.size()) - 1);
}

MixedProfile Trajectory::StateAt(double t) const {
  CheckTime(t);
  if (segments_.empty()) return initial_;
  const Segment& s = segments_[SegmentIndexAt(t)];
  return SegmentState(s, std::clamp(t, s.t_start, s.t_end));
}

std::pair<double, double> Trajectory::PayoffIntegralAt(double t) const {
  CheckTime(t);
  if (segments_.empty()) {
    const auto [ra, rb] = Payoff(game_, initial_);
    return {ra, rb};
  }
  const Segment& s = segments_[SegmentIndexAt(t)];
  const double dt = std::min(t, s.t_end) - s.t_start;
  if (s.i == kMixedPlay) {
    const auto [ra, rb] = Payoff(game_, MixedProfile{s.p_start, s.q_start});
    return {s.integral_a_start + ra * dt, s.integral_b_start + rb * dt};
  }
  return {s.integral_a_start + game_.a()(s.i, s.j) * dt,
          s.integral_b_start + game_.b()(s.i, s.j) * dt};
}

std::pair<double, double> Trajectory::AveragePayoffAt(double t) const {
  const auto [ia, ib] = PayoffIntegralAt(t);
  return {ia / t, ib / t};
}

JointDistribution Trajectory::EmpiricalDistribution() const {
  return JointDistribution::FromOccupancy(occupancy_);
}

std::vector<double> EpochCheckpoints(double horizon, int per_decade) {
  Require(per_decade >= 1, ErrorKind::kInvalidArgument,
          "checkpoints_per_decade must be >= 1");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = std::pow(10.0, static_cast<double>(k) / per_decade);
    if (t >= horizon * (1.0 - 1e-12)) break;
    out.push_back(t);
  }
  out.push_back(horizon);
  return out;
}

Trajectory Simulate(const BimatrixGame& game, const MixedProfile& initial,
                    double horizon, const SimulationOptions& options) {
  Require(horizon > 1.0, ErrorKind::kInvalidArgument,
          "horizon must be greater than 1");
  CheckDimensions(game, initial);
  const GenericityReport genericity = CheckGenericity(game);
  Require(!genericity.degenerate, ErrorKind::kDegenerate,
          "degenerate game: " + genericity.reason);

  Trajectory traj(game, initial);
  traj.checkpoints_ = EpochCheckpoints(horizon, options.checkpoints_per_decade);
  const Eigen::MatrixXd& a = game.a();
  const Eigen::MatrixXd& b = game.b();

  if (game.rows() == game.cols()) {
    const auto nash = InteriorNash(game);
    if (nash &&
        (initial.p - nash->profile.p).cwiseAbs().maxCoeff() <= 1e-12 &&
        (initial.q - nash->profile.q).cwiseAbs().maxCoeff() <= 1e-12) {
      const auto [ra, rb] = Payoff(game, initial);
      Segment s{1.0, horizon, kMixedPlay, kMixedPlay, initial.p, initial.q,
                traj.integral_a_, traj.integral_b_};
      traj.segments_.push_back(s);
      traj.occupancy_ += (horizon - 1.0) * initial.p * initial.q.transpose();
      traj.integral_a_ += ra * (horizon - 1.0);
      traj.integral_b_ += rb * (horizon - 1.0);
      traj.t_now_ = horizon;
      traj.stationary_ = true;
      return traj;
    }
  }

  SegmentStart cur;
  cur.t = 1.0;
  cur.p = initial.p;
  cur.q = initial.q;
  bool ambiguous = false;
  std::tie(cur.i, cur.j) = ResolveRegion(game, cur.p, cur.q, -1, -1, &ambiguous);
  if (ambiguous) {
    traj.events_.push_back({1.0, "non-generic start: ambiguous tie at t = 1"});
  }

  int immediate_run = 0;
  while (cur.t < horizon) {
    if (static_cast<int64_t>(traj.segments_.size()) >= options.max_events) {
      traj.termination_ = Termination::kEventCap;
      traj.events_.push_back({cur.t, "event cap reached; trajectory truncated"});
      break;
    }
    const Crossing crossing = NextCrossing(game, cur, horizon);
    if (crossing.immediate) {
      if (++immediate_run > kMaxImmediateSwitches) {
        traj.termination_ = Termination::kSlidingSuspected;
        traj.events_.push_back(
            {cur.t, "sliding suspected: repeated zero-length switches"});
        break;
      }
      cur.i = crossing.new_region.a.front();
      cur.j = crossing.new_region.b.front();
      continue;
    }
    immediate_run = 0;

    const double t_end = crossing.t_cross ? std::min(*crossing.t_cross, horizon)
                                          : horizon;
    traj.segments_.push_back(Segment{cur.t, t_end, cur.i, cur.j, cur.p, cur.q,
                                     traj.integral_a_, traj.integral_b_});
    const double dt = t_end - cur.t;
    const double u = cur.t / t_end;
    cur.p = Renormalize(Advance(cur.p, cur.i, u));
    cur.q = Renormalize(Advance(cur.q, cur.j, u));
    traj.integral_a_ += a(cur.i, cur.j) * dt;
    traj.integral_b_ += b(cur.i, cur.j) * dt;
    traj.occupancy_(cur.i, cur.j) += dt;
    cur.t = t_end;

    if (crossing.t_cross && cur.t < horizon) {
      if (crossing.non_generic) {
        std::ostringstream what;
        what << "non-generic crossing into (" << crossing.new_region.a.front() + 1
             << "," << crossing.new_region.b.front() + 1 << ")";
        traj.events_.push_back({cur.t, what.str()});
      }
      cur.i = crossing.new_region.a.front();
      cur.j = crossing.new_region.b.front();
    }
  }
  traj.t_now_ = cur.t;
  return traj;
}

std::pair<double, double> BeliefGap(const Trajectory& trajectory, double t) {
  const auto [rho_a, rho_b] = trajectory.AveragePayoffAt(t);
  const MixedProfile state = trajectory.StateAt(t);
  const BimatrixGame& game = trajectory.game();
  return {rho_a - MaxPayoff(game, Player::kA, state.q),
          rho_b - MaxPayoff(game, Player::kB, state.p)};
}

}  // namespace fpdyn
