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
#ifndef FPDYN_SERIALIZATION_H_
#define FPDYN_SERIALIZATION_H_

#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "json.hpp"

#include "fpdyn/dynamics.h"
#include "fpdyn/equilibrium.h"
#include "fpdyn/equivalence.h"
#include "fpdyn/game.h"
#include "fpdyn/orbit_analysis.h"

namespace fpdyn {

using Json = nlohmann::ordered_json;

// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double x);

Json VectorToJson(const Eigen::VectorXd& v);
Json MatrixToJson(const Eigen::MatrixXd& m);  // array of rows
Eigen::VectorXd VectorFromJson(const Json& j);
Eigen::MatrixXd MatrixFromJson(const Json& j);

// {"name"?, "m", "n", "A", "B"}; doubles round-trip bit-identically.
Json GameToJson(const BimatrixGame& game);
BimatrixGame GameFromJson(const Json& j);
BimatrixGame LoadGameFile(const std::string& path);

// {"c", "col_shifts", "d", "row_shifts"}.
Json TransformToJson(const LinearTransform& transform);
LinearTransform TransformFromJson(const Json& j);

// {"apex", "extreme_points", "contains_ray_index"}; the ray index is
// one-based in JSON.
Json ConeSpecToJson(const ConeSpec& cone);
ConeSpec ConeSpecFromJson(const Json& j);

Json JointDistributionToJson(const JointDistribution& dist);
Json RegretToJson(const RegretReport& report);
Json NashToJson(const NashPoint& nash);
Json ItineraryToJson(const Itinerary& itinerary);
Json DominanceToJson(const DominanceReport& report);
// Full segment list plus accumulators. Strategy indices are one-based.
Json TrajectoryToJson(const Trajectory& trajectory);

// Columns t, p_1..p_m, q_1..q_n, region_i, region_j, avg_payoff_A,
// avg_payoff_B, gap_A, gap_B; one row per segment boundary and checkpoint.
// Regions are one-based; 0 marks the mixed Nash play of a stationary run.
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);

}  // namespace fpdyn

#endif  // FPDYN_SERIALIZATION_H_
