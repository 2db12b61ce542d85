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
// fpdyn: command-line front end.
//
//   fpdyn describe  --game shapley
//   fpdyn nash      --game beta:0.5
//   fpdyn simulate  --game section5 --horizon 1e6 --initial "0.5,0.3,0.2;0.2,0.3,0.5"
//   fpdyn regret    --game beta:0.5 --horizon 1e5 --tol 1e-3
//   fpdyn transform --game prisoners --transform t.json
//   fpdyn dominant  --game section5
//   fpdyn cones     --game section5 --cone-a ca.json --cone-b cb.json
//   fpdyn search    --count 20 --seed 7 --inject section5 --out hits.json
//   fpdyn reproduce section5
//
// Data goes to --out (or stdout); summaries and errors go to stderr.
// Exit codes: 0 ok, 1 gate failure, 2 usage, 3 degenerate input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fpdyn/batch.h"
#include "fpdyn/builtin_games.h"
#include "fpdyn/dynamics.h"
#include "fpdyn/equilibrium.h"
#include "fpdyn/equivalence.h"
#include "fpdyn/error.h"
#include "fpdyn/experiments.h"
#include "fpdyn/orbit_analysis.h"
#include "fpdyn/search.h"
#include "fpdyn/serialization.h"

namespace {

using fpdyn::Error;
using fpdyn::ErrorKind;
using fpdyn::Json;

constexpr int kExitOk = 0;
constexpr int kExitGate = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct Options {
  std::string game;
  double horizon = 1e4;
  std::string initial;
  uint64_t seed = 1;
  int workers = 0;
  double tol = -1.0;  // < 0: command default
  std::string out;
  std::string format = "csv";
  int checkpoints_per_decade = 1;
  std::string transform_path;
  std::string cone_a_path, cone_b_path;
  int count = 10;
  int dimension = 3;
  int starts = 3;
  std::vector<std::string> inject;
  std::string cycle_dir;
  std::string target;
  std::string trajectory_out;
};

fpdyn::BimatrixGame LoadGame(const std::string& source) {
  if (source.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "--game is required");
  }
  if (std::filesystem::is_regular_file(source)) {
    return fpdyn::LoadGameFile(source);
  }
  return fpdyn::BuiltinGame(source);
}

void Emit(const Options& opts, const std::string& data) {
  if (opts.out.empty() || opts.out == "-") {
    std::cout << data;
    std::cout.flush();
  } else {
    fpdyn::WriteTextFile(opts.out, data);
  }
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

Eigen::VectorXd ParseVector(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str()) {
      throw Error(ErrorKind::kInvalidArgument, "bad number '" + item + "'");
    }
    values.push_back(v);
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
}

// "p1,..,pm;q1,..,qn" | "grid:N" | "random:SEED"; default random:<--seed>.
std::vector<fpdyn::MixedProfile> ParseInitial(const Options& opts,
                                              const fpdyn::BimatrixGame& game) {
  const std::string spec =
      opts.initial.empty() ? "random:" + std::to_string(opts.seed)
                           : opts.initial;
  const int m = game.rows(), n = game.cols();
  if (spec.rfind("grid:", 0) == 0) {
    return fpdyn::GridStarts(m, n, std::stoi(spec.substr(5)));
  }
  if (spec.rfind("random:", 0) == 0) {
    return fpdyn::RandomStarts(m, n, 1, std::stoull(spec.substr(7)));
  }
  const auto split = spec.find(';');
  if (split == std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                "--initial must be 'p;q', 'grid:N' or 'random:SEED'");
  }
  return {fpdyn::MixedProfile::Make(ParseVector(spec.substr(0, split)),
                                    ParseVector(spec.substr(split + 1)))};
}

fpdyn::MixedProfile SingleInitial(const Options& opts,
                                  const fpdyn::BimatrixGame& game) {
  const auto starts = ParseInitial(opts, game);
  if (starts.size() != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "this command needs a single initial profile");
  }
  return starts.front();
}

void CheckHorizon(const Options& opts) {
  if (!(opts.horizon > 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "--horizon must be > 1");
  }
}

int Describe(const Options& opts) {
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  const fpdyn::GenericityReport genericity = fpdyn::CheckGenericity(game);
  std::cerr << "game " << (game.name().empty() ? "(unnamed)" : game.name())
            << ": " << game.rows() << "x" << game.cols() << ", "
            << (genericity.degenerate ? "degenerate (" + genericity.reason + ")"
                                      : std::string("generic"))
            << "\n";
  if (game.rows() == game.cols()) {
    const auto nash = fpdyn::InteriorNash(game);
    std::cerr << (nash ? "unique interior Nash equilibrium"
                       : "no unique interior Nash equilibrium")
              << "\n";
  }
  Emit(opts, Dump(fpdyn::GameToJson(game)));
  return kExitOk;
}

int Nash(const Options& opts) {
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  Json out;
  out["interior"] = Json();
  if (game.rows() == game.cols()) {
    if (const auto nash = fpdyn::InteriorNash(game)) {
      out["interior"] = fpdyn::NashToJson(*nash);
      std::cerr << "interior Nash payoffs (" << nash->payoff_a << ", "
                << nash->payoff_b << ")\n";
    }
  }
  out["pure"] = Json::array();
  for (const auto& nash : fpdyn::PureNashEquilibria(game)) {
    out["pure"].push_back(fpdyn::NashToJson(nash));
  }
  Emit(opts, Dump(out));
  return kExitOk;
}

fpdyn::SimulationOptions SimOptions(const Options& opts) {
  fpdyn::SimulationOptions sim;
  sim.checkpoints_per_decade = opts.checkpoints_per_decade;
  return sim;
}

int Simulate(const Options& opts) {
  CheckHorizon(opts);
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  const auto starts = ParseInitial(opts, game);
  if (starts.size() > 1) {
    const auto results = fpdyn::SimulateBatch(game, starts, opts.horizon,
                                              SimOptions(opts), opts.workers);
    std::ostringstream csv;
    csv << "run";
    for (int k = 1; k <= game.rows(); ++k) csv << ",p0_" << k;
    for (int k = 1; k <= game.cols(); ++k) csv << ",q0_" << k;
    for (int k = 1; k <= game.rows(); ++k) csv << ",p_" << k;
    for (int k = 1; k <= game.cols(); ++k) csv << ",q_" << k;
    csv << ",avg_payoff_A,avg_payoff_B,segments,error\n";
    for (size_t r = 0; r < results.size(); ++r) {
      const auto& res = results[r];
      csv << r;
      auto put = [&](const Eigen::VectorXd& v) {
        for (int k = 0; k < v.size(); ++k) csv << ',' << fpdyn::FormatDouble(v[k]);
      };
      put(res.initial.p);
      put(res.initial.q);
      if (res.error.empty()) {
        put(res.final_state.p);
        put(res.final_state.q);
        csv << ',' << fpdyn::FormatDouble(res.average_payoffs.first) << ','
            << fpdyn::FormatDouble(res.average_payoffs.second) << ','
            << res.segments << ",\n";
      } else {
        for (int k = 0; k < game.rows() + game.cols() + 2; ++k) csv << ',';
        csv << ",0," << '"' << res.error << '"' << "\n";
      }
    }
    Emit(opts, csv.str());
    std::cerr << results.size() << " runs to T=" << opts.horizon << "\n";
    return kExitOk;
  }
  const fpdyn::Trajectory trajectory =
      fpdyn::Simulate(game, starts.front(), opts.horizon, SimOptions(opts));
  const auto [avg_a, avg_b] = trajectory.AveragePayoffAt(trajectory.t_now());
  std::cerr << trajectory.segments().size() << " segments to T="
            << trajectory.t_now() << ", average payoffs (" << avg_a << ", "
            << avg_b << ")\n";
  for (const auto& event : trajectory.events()) {
    std::cerr << "t=" << event.t << ": " << event.what << "\n";
  }
  if (opts.format == "json") {
    Emit(opts, Dump(fpdyn::TrajectoryToJson(trajectory)));
  } else {
    std::ostringstream csv;
    fpdyn::WriteTrajectoryCsv(csv, trajectory);
    Emit(opts, csv.str());
  }
  return trajectory.truncated() ? kExitGate : kExitOk;
}

int RegretCommand(const Options& opts) {
  CheckHorizon(opts);
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  const double tol = opts.tol >= 0.0 ? opts.tol
                                     : fpdyn::kDefaultMembershipTolerance;
  const fpdyn::Trajectory trajectory =
      fpdyn::Simulate(game, SingleInitial(opts, game), opts.horizon);
  const fpdyn::JointDistribution dist = trajectory.EmpiricalDistribution();
  const fpdyn::RegretReport report = fpdyn::Regret(game, dist);
  const bool cce = fpdyn::EquilibriumMembership(
      game, dist, fpdyn::EquilibriumKind::kCoarseCorrelated, tol);
  const bool ce = fpdyn::EquilibriumMembership(
      game, dist, fpdyn::EquilibriumKind::kCorrelated, tol);
  Json out;
  out["horizon"] = trajectory.t_now();
  out["distribution"] = fpdyn::JointDistributionToJson(dist);
  out["regret"] = fpdyn::RegretToJson(report);
  out["tol"] = tol;
  out["cce"] = cce;
  out["ce"] = ce;
  std::cerr << "max external regret " << report.max_external
            << ", max internal regret " << report.max_internal << "; CCE "
            << (cce ? "yes" : "no") << ", CE " << (ce ? "yes" : "no")
            << " at tol " << tol << "\n";
  Emit(opts, Dump(out));
  return kExitOk;
}

int Transform(const Options& opts) {
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  if (opts.transform_path.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "--transform is required");
  }
  const fpdyn::LinearTransform transform = fpdyn::TransformFromJson(
      Json::parse(fpdyn::ReadTextFile(opts.transform_path)));
  Emit(opts, Dump(fpdyn::GameToJson(fpdyn::ApplyTransform(game, transform))));
  return kExitOk;
}

int Dominant(const Options& opts) {
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  const fpdyn::DominantResult result = fpdyn::DominantEquivalent(game);
  Json out;
  out["game"] = fpdyn::GameToJson(result.game);
  out["transform"] = fpdyn::TransformToJson(result.transform);
  std::cerr << "verification gate passed\n";
  Emit(opts, Dump(out));
  return kExitOk;
}

int Cones(const Options& opts) {
  const fpdyn::BimatrixGame game = LoadGame(opts.game);
  if (opts.cone_a_path.empty() || opts.cone_b_path.empty()) {
    // No default cone: print the rays so a cone can be chosen around them.
    const fpdyn::RaySet rays = fpdyn::ComputeRays(game);
    Json out;
    out["nash"] = fpdyn::NashToJson(rays.nash);
    out["rays_in_B_simplex"] = Json::array();
    for (const auto& point : rays.points_a) {
      out["rays_in_B_simplex"].push_back(fpdyn::VectorToJson(point));
    }
    out["rays_in_A_simplex"] = Json::array();
    for (const auto& point : rays.points_b) {
      out["rays_in_A_simplex"].push_back(fpdyn::VectorToJson(point));
    }
    Emit(opts, Dump(out));
    std::cerr << "no cones given (--cone-a, --cone-b); printed the rays\n";
    return kExitUsage;
  }
  const auto read_cone = [](const std::string& path) {
    return fpdyn::ConeSpecFromJson(Json::parse(fpdyn::ReadTextFile(path)));
  };
  const fpdyn::ConeTargetedResult result = fpdyn::ConeTargetedEquivalent(
      game, read_cone(opts.cone_a_path), read_cone(opts.cone_b_path));
  Json out;
  out["game"] = fpdyn::GameToJson(result.game);
  out["transform"] = fpdyn::TransformToJson(result.transform);
  Emit(opts, Dump(out));
  return kExitOk;
}

int Search(const Options& opts) {
  fpdyn::SearchConfig config;
  config.count = opts.count;
  config.dimension = opts.dimension;
  config.seed = opts.seed;
  config.horizon = opts.horizon;
  config.starts_per_game = opts.starts;
  config.workers = opts.workers;
  if (opts.tol > 0.0) config.cycle_tol = opts.tol;
  for (const auto& key : opts.inject) config.injected.push_back(LoadGame(key));
  const fpdyn::SearchResult result = fpdyn::SearchSubNash(config);
  for (const auto& line : result.log) std::cerr << line << "\n";
  std::cerr << result.trials << " random trials, " << result.accepted
            << " accepted, " << result.rejected_no_nash
            << " without interior Nash, " << result.rejected_degenerate
            << " degenerate; " << result.findings.size() << " findings\n";

  Json out = Json::array();
  for (const auto& finding : result.findings) {
    Json j;
    j["trial"] = finding.trial;
    j["game"] = fpdyn::GameToJson(finding.game);
    j["transform"] = fpdyn::TransformToJson(finding.transform);
    j["nash"] = fpdyn::NashToJson(finding.nash);
    j["itinerary"] = fpdyn::ItineraryToJson(finding.itinerary);
    j["dominance_report"] = fpdyn::DominanceToJson(finding.dominance);
    j["cone_A"] = fpdyn::ConeSpecToJson(finding.cone_a);
    j["cone_B"] = fpdyn::ConeSpecToJson(finding.cone_b);
    j["cycle_states_csv_path"] = Json();
    if (!opts.cycle_dir.empty()) {
      std::filesystem::create_directories(opts.cycle_dir);
      const std::string path = (std::filesystem::path(opts.cycle_dir) /
                                ("cycle_" + std::to_string(finding.trial) +
                                 ".csv"))
                                   .string();
      std::ostringstream csv;
      const int n = finding.game.rows();
      csv << "vertex";
      for (int k = 1; k <= n; ++k) csv << ",p_" << k;
      for (int k = 1; k <= n; ++k) csv << ",q_" << k;
      csv << "\n";
      for (size_t v = 0; v < finding.cycle_states.size(); ++v) {
        csv << v;
        for (int k = 0; k < n; ++k)
          csv << ',' << fpdyn::FormatDouble(finding.cycle_states[v].p[k]);
        for (int k = 0; k < n; ++k)
          csv << ',' << fpdyn::FormatDouble(finding.cycle_states[v].q[k]);
        csv << "\n";
      }
      fpdyn::WriteTextFile(path, csv.str());
      j["cycle_states_csv_path"] = path;
    }
    out.push_back(j);
  }
  Emit(opts, Dump(out));
  return kExitOk;
}

int Reproduce(const Options& opts) {
  std::vector<std::string> keys = {opts.target};
  if (opts.target == "all") keys = fpdyn::ReproduceKeys();
  bool all_passed = true;
  Json out = Json::array();
  for (const auto& key : keys) {
    const fpdyn::CriterionResult result = fpdyn::RunCriterion(key);
    std::cerr << (result.passed ? "[PASS] " : "[FAIL] ") << result.id << " "
              << result.key << ": " << result.detail << "\n";
    all_passed = all_passed && result.passed;
    Json j;
    j["id"] = result.id;
    j["key"] = result.key;
    j["title"] = result.title;
    j["passed"] = result.passed;
    j["detail"] = result.detail;
    if (result.key == "section5") {
      const fpdyn::Section5Run run = fpdyn::RunSection5();
      j["nash"] = fpdyn::NashToJson(run.nash);
      j["itinerary"] = fpdyn::ItineraryToJson(run.itinerary);
      j["dominance_report"] = fpdyn::DominanceToJson(run.dominance);
      Json averages = Json::array();
      for (const auto& [a, b] : run.period_averages) averages.push_back({a, b});
      j["period_averages"] = averages;
      if (!opts.trajectory_out.empty()) {
        std::ostringstream csv;
        fpdyn::WriteTrajectoryCsv(csv, run.trajectory);
        fpdyn::WriteTextFile(opts.trajectory_out, csv.str());
        j["trajectory_csv_path"] = opts.trajectory_out;
      }
    }
    out.push_back(j);
  }
  Emit(opts, Dump(keys.size() == 1 ? out[0] : out));
  return all_passed ? kExitOk : kExitGate;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerate:
      return kExitDegenerate;
    case ErrorKind::kGateFailure:
    case ErrorKind::kInternal:
      return kExitGate;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact event-driven fictitious play for bimatrix games"};
  app.require_subcommand(1);
  Options opts;

  auto add_game = [&](CLI::App* cmd) {
    cmd->add_option("--game", opts.game, "Game JSON file or built-in key")
        ->required();
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out, "Output file (default stdout)");
  };
  auto add_dynamics = [&](CLI::App* cmd) {
    cmd->add_option("--horizon", opts.horizon, "Final time T (> 1)");
    cmd->add_option("--initial", opts.initial,
                    "'p1,..;q1,..', 'grid:N' or 'random:SEED'");
    cmd->add_option("--seed", opts.seed, "Seed for random:… defaults");
  };

  auto* describe = app.add_subcommand("describe", "Validate and print a game");
  add_game(describe);
  add_out(describe);

  auto* nash = app.add_subcommand("nash", "Interior and pure Nash equilibria");
  add_game(nash);
  add_out(nash);

  auto* simulate = app.add_subcommand("simulate", "Run fictitious play");
  add_game(simulate);
  add_out(simulate);
  add_dynamics(simulate);
  simulate->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--checkpoints", opts.checkpoints_per_decade,
                       "Reporting checkpoints per decade of t");
  simulate->add_option("--workers", opts.workers, "Threads for grid runs");

  auto* regret = app.add_subcommand("regret", "Regrets of the empirical play");
  add_game(regret);
  add_out(regret);
  add_dynamics(regret);
  regret->add_option("--tol", opts.tol, "Membership tolerance (default 1e-8)");

  auto* transform = app.add_subcommand("transform", "Apply a linear transform");
  add_game(transform);
  add_out(transform);
  transform->add_option("--transform", opts.transform_path,
                        "Transform JSON {c, col_shifts, d, row_shifts}")
      ->required();

  auto* dominant =
      app.add_subcommand("dominant", "Equivalent game where FP beats Nash");
  add_game(dominant);
  add_out(dominant);

  auto* cones = app.add_subcommand(
      "cones", "Equivalent game with prescribed sub-Nash cones");
  add_game(cones);
  add_out(cones);
  cones->add_option("--cone-a", opts.cone_a_path, "Cone in A's simplex");
  cones->add_option("--cone-b", opts.cone_b_path, "Cone in B's simplex");

  auto* search =
      app.add_subcommand("search", "Random search for Nash-dominated cycles");
  add_out(search);
  search->add_option("--count", opts.count, "Accepted random games");
  search->add_option("--dimension", opts.dimension, "Strategies per player");
  search->add_option("--seed", opts.seed, "Search seed");
  search->add_option("--horizon", opts.horizon, "Simulation horizon")
      ->default_val(1e6);
  search->add_option("--starts", opts.starts, "Initial conditions per game");
  search->add_option("--workers", opts.workers, "Threads (0 = all)");
  search->add_option("--tol", opts.tol, "Cycle return-map tolerance");
  search->add_option("--inject", opts.inject, "Extra games (keys or files)");
  search->add_option("--cycle-dir", opts.cycle_dir,
                     "Directory for per-finding cycle CSVs");

  auto* reproduce =
      app.add_subcommand("reproduce", "Run a named reproduction target");
  add_out(reproduce);
  reproduce->add_option("target", opts.target, "Target key, number or 'all'")
      ->required();
  reproduce->add_option("--trajectory-out", opts.trajectory_out,
                        "Trajectory CSV for the section5 target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*describe) return Describe(opts);
    if (*nash) return Nash(opts);
    if (*simulate) return Simulate(opts);
    if (*regret) return RegretCommand(opts);
    if (*transform) return Transform(opts);
    if (*dominant) return Dominant(opts);
    if (*cones) return Cones(opts);
    if (*search) return Search(opts);
    if (*reproduce) return Reproduce(opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
