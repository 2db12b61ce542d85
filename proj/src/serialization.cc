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
#include "fpdyn/serialization.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "fpdyn/error.h"

namespace fpdyn {
namespace {

std::string TerminationName(Termination termination) {
  switch (termination) {
    case Termination::kHorizon:
      return "horizon";
    case Termination::kEventCap:
      return "event-cap";
    case Termination::kSlidingSuspected:
      return "sliding-suspected";
  }
  return "horizon";
}

// Wraps json access errors into the project's error type.
template <typename F>
auto Parse(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

std::string FormatDouble(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

Json VectorToJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (int k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

Json MatrixToJson(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    out.push_back(VectorToJson(m.row(r).transpose()));
  }
  return out;
}

Eigen::VectorXd VectorFromJson(const Json& j) {
  return Parse("vector", [&] {
    Require(j.is_array(), ErrorKind::kInvalidArgument, "expected an array");
    Eigen::VectorXd v(j.size());
    for (size_t k = 0; k < j.size(); ++k) v[k] = j[k].get<double>();
    return v;
  });
}

Eigen::MatrixXd MatrixFromJson(const Json& j) {
  return Parse("matrix", [&] {
    Require(j.is_array() && !j.empty() && j[0].is_array(),
            ErrorKind::kInvalidArgument, "expected an array of rows");
    const size_t cols = j[0].size();
    Eigen::MatrixXd m(j.size(), cols);
    for (size_t r = 0; r < j.size(); ++r) {
      Require(j[r].is_array() && j[r].size() == cols,
              ErrorKind::kInvalidArgument, "ragged matrix rows");
      for (size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
  });
}

Json GameToJson(const BimatrixGame& game) {
  Json out;
  if (!game.name().empty()) out["name"] = game.name();
  out["m"] = game.rows();
  out["n"] = game.cols();
  out["A"] = MatrixToJson(game.a());
  out["B"] = MatrixToJson(game.b());
  return out;
}

BimatrixGame GameFromJson(const Json& j) {
  return Parse("game", [&] {
    Require(j.is_object(), ErrorKind::kInvalidArgument,
            "game must be a JSON object");
    Eigen::MatrixXd a = MatrixFromJson(j.at("A"));
    Eigen::MatrixXd b = MatrixFromJson(j.at("B"));
    if (j.contains("m")) {
      Require(j.at("m").get<int>() == a.rows(), ErrorKind::kDimensionMismatch,
              "field m does not match the matrices");
    }
    if (j.contains("n")) {
      Require(j.at("n").get<int>() == a.cols(), ErrorKind::kDimensionMismatch,
              "field n does not match the matrices");
    }
    std::string name = j.value("name", std::string());
    return BimatrixGame(std::move(a), std::move(b), std::move(name));
  });
}

BimatrixGame LoadGameFile(const std::string& path) {
  const std::string text = ReadTextFile(path);
  const Json j = Parse("game file", [&] { return Json::parse(text); });
  return GameFromJson(j);
}

Json TransformToJson(const LinearTransform& transform) {
  Json out;
  out["c"] = transform.c;
  out["col_shifts"] = VectorToJson(transform.col_shifts);
  out["d"] = transform.d;
  out["row_shifts"] = VectorToJson(transform.row_shifts);
  return out;
}

LinearTransform TransformFromJson(const Json& j) {
  return Parse("transform", [&] {
    LinearTransform t;
    t.c = j.at("c").get<double>();
    t.col_shifts = VectorFromJson(j.at("col_shifts"));
    t.d = j.at("d").get<double>();
    t.row_shifts = VectorFromJson(j.at("row_shifts"));
    return t;
  });
}

Json ConeSpecToJson(const ConeSpec& cone) {
  Json out;
  out["apex"] = VectorToJson(cone.apex);
  out["extreme_points"] = Json::array();
  for (const auto& point : cone.extreme_points) {
    out["extreme_points"].push_back(VectorToJson(point));
  }
  out["contains_ray_index"] = cone.contains_ray_index + 1;
  return out;
}

ConeSpec ConeSpecFromJson(const Json& j) {
  return Parse("cone", [&] {
    ConeSpec cone;
    cone.apex = VectorFromJson(j.at("apex"));
    for (const auto& point : j.at("extreme_points")) {
      cone.extreme_points.push_back(VectorFromJson(point));
    }
    cone.contains_ray_index = j.at("contains_ray_index").get<int>() - 1;
    return cone;
  });
}

Json JointDistributionToJson(const JointDistribution& dist) {
  return MatrixToJson(dist.matrix());
}

Json RegretToJson(const RegretReport& report) {
  Json out;
  out["external_A"] = VectorToJson(report.external_a);
  out["external_B"] = VectorToJson(report.external_b);
  out["internal_A"] = MatrixToJson(report.internal_a);
  out["internal_B"] = MatrixToJson(report.internal_b);
  out["max_external"] = report.max_external;
  out["max_internal"] = report.max_internal;
  return out;
}

Json NashToJson(const NashPoint& nash) {
  Json out;
  out["p"] = VectorToJson(nash.profile.p);
  out["q"] = VectorToJson(nash.profile.q);
  out["payoff_A"] = nash.payoff_a;
  out["payoff_B"] = nash.payoff_b;
  out["completely_mixed"] = nash.completely_mixed;
  return out;
}

Json ItineraryToJson(const Itinerary& itinerary) {
  Json out;
  out["periodic"] = itinerary.periodic;
  out["period_length"] =
      itinerary.period_length ? Json(*itinerary.period_length) : Json();
  out["return_map_error"] = std::isfinite(itinerary.return_map_error)
                                ? Json(itinerary.return_map_error)
                                : Json();
  Json block = Json::array();
  for (const auto& [i, j] : itinerary.Block()) block.push_back({i + 1, j + 1});
  out["cycle"] = block;
  out["steps"] = static_cast<int64_t>(itinerary.steps.size());
  if (!itinerary.diagnostic.empty()) out["diagnostic"] = itinerary.diagnostic;
  return out;
}

Json DominanceToJson(const DominanceReport& report) {
  Json out;
  out["classification"] = DominanceName(report.classification);
  out["avg_payoffs"] = {report.avg_payoffs.first, report.avg_payoffs.second};
  out["nash_payoffs"] = {report.nash_payoffs.first,
                         report.nash_payoffs.second};
  out["min_avg_payoffs"] = {report.min_avg_a, report.min_avg_b};
  out["max_avg_payoffs"] = {report.max_avg_a, report.max_avg_b};
  out["window"] = {report.window_start, report.window_end};
  return out;
}

Json TrajectoryToJson(const Trajectory& trajectory) {
  Json out;
  out["game"] = GameToJson(trajectory.game());
  out["initial"] = {{"p", VectorToJson(trajectory.initial_window().p)},
                    {"q", VectorToJson(trajectory.initial_window().q)}};
  out["t_now"] = trajectory.t_now();
  out["stationary"] = trajectory.stationary();
  out["termination"] = TerminationName(trajectory.termination());
  out["payoff_integral_A"] = trajectory.payoff_integral_a();
  out["payoff_integral_B"] = trajectory.payoff_integral_b();
  out["occupancy"] = MatrixToJson(trajectory.occupancy());
  Json segments = Json::array();
  for (const auto& s : trajectory.segments()) {
    segments.push_back({{"t_start", s.t_start},
                        {"t_end", s.t_end},
                        {"i", s.i + 1},
                        {"j", s.j + 1},
                        {"p_start", VectorToJson(s.p_start)},
                        {"q_start", VectorToJson(s.q_start)}});
  }
  out["segments"] = segments;
  Json events = Json::array();
  for (const auto& e : trajectory.events()) {
    events.push_back({{"t", e.t}, {"what", e.what}});
  }
  out["events"] = events;
  return out;
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory) {
  const int m = trajectory.game().rows(), n = trajectory.game().cols();
  out << "t";
  for (int k = 1; k <= m; ++k) out << ",p_" << k;
  for (int k = 1; k <= n; ++k) out << ",q_" << k;
  out << ",region_i,region_j,avg_payoff_A,avg_payoff_B,gap_A,gap_B\n";

  std::vector<double> times;
  for (const auto& s : trajectory.segments()) times.push_back(s.t_start);
  for (double t : trajectory.checkpoints()) {
    if (t <= trajectory.t_now()) times.push_back(t);
  }
  times.push_back(trajectory.t_now());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  for (double t : times) {
    const MixedProfile state = trajectory.StateAt(t);
    int i = 0, j = 0;
    if (!trajectory.segments().empty()) {
      const Segment& s = trajectory.segments()[trajectory.SegmentIndexAt(t)];
      i = s.i + 1;
      j = s.j + 1;
    }
    const auto [avg_a, avg_b] = trajectory.AveragePayoffAt(t);
    const auto [gap_a, gap_b] = BeliefGap(trajectory, t);
    out << FormatDouble(t);
    for (int k = 0; k < m; ++k) out << ',' << FormatDouble(state.p[k]);
    for (int k = 0; k < n; ++k) out << ',' << FormatDouble(state.q[k]);
    out << ',' << i << ',' << j << ',' << FormatDouble(avg_a) << ','
        << FormatDouble(avg_b) << ',' << FormatDouble(gap_a) << ','
        << FormatDouble(gap_b) << '\n';
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorKind::kInvalidArgument,
          "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  Require(static_cast<bool>(out), ErrorKind::kInvalidArgument,
          "cannot write " + path);
  out << content;
  Require(static_cast<bool>(out), ErrorKind::kInternal,
          "write failed for " + path);
}

}  // namespace fpdyn
