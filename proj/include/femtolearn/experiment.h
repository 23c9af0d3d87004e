// Copyright 2026 The femtolearn Authors
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

#ifndef FEMTOLEARN_EXPERIMENT_H_
#define FEMTOLEARN_EXPERIMENT_H_

// Experiment orchestration: instance construction (with the macrocell
// feasibility protocol), seeded learning runs, the two reference lines,
// the gamma_0 sweep and the per-algorithm summary table.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "femtolearn/channel_model.h"
#include "femtolearn/config.h"
#include "femtolearn/dynamics.h"
#include "femtolearn/equilibrium.h"
#include "femtolearn/game.h"
#include "femtolearn/learning.h"

namespace femtolearn {

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentInstance {
  Topology topology;
  GameInstance full_game;             // every user, configured targets
  GameInstance game;                  // active users, adjusted targets
  std::vector<std::size_t> user_ids;  // original index of each active user
  std::vector<bool> follower_active;  // per original follower
  int target_reductions = 0;
  bool macro_feasible = true;         // MU check after the protocol
  UtilityTable table;                 // physical units
  UtilityTable normalized;

  std::size_t num_active_followers() const { return user_ids.size() - 1; }
};

// Users of the full (unadjusted) game: index 0 is the MU.
GameInstance BuildGame(const ExperimentConfig& config, const Topology& topology);

// Topology, gains, and -- when config.feasibility.enabled -- target reduction
// followed (if still infeasible and deactivation is on) by switching off
// femtocells. Never throws for infeasibility; see macro_feasible.
ExperimentInstance BuildInstance(const ExperimentConfig& config);

// Throws InfeasibleError if the protocol was enabled and failed.
void RequireFeasible(const ExperimentConfig& config,
                     const ExperimentInstance& instance);

// Stable 64-bit hash of every number defining a game.
std::uint64_t InstanceFingerprint(const GameInstance& game);

// Learning seed of replicate r; every algorithm of that replicate uses it.
std::uint64_t ReplicateSeed(std::uint64_t base, int replicate);

// Per active user, normalized units.
std::vector<double> Temperatures(const ExperimentConfig& config,
                                 const ExperimentInstance& instance);

LearnerOptions MakeLearnerOptions(const ExperimentConfig& config,
                                  const ExperimentInstance& instance,
                                  Algorithm algorithm);

struct AlgorithmRun {
  Algorithm algorithm = Algorithm::kRla1;
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;
  std::vector<TraceRecord> records;  // logged steps only
  StrategyProfile terminal;
  StrategyProfile tail_average;      // mean strategy over the last 10% of steps
  std::vector<double> terminal_expected_utility;  // physical, active users
};

// Steps logged: every log_every-th step and the last one (steps are 1-based).
AlgorithmRun RunLearner(const ExperimentConfig& config,
                        const ExperimentInstance& instance, Algorithm algorithm,
                        std::uint64_t seed, bool keep_records = true);

struct ReferenceLines {
  EquilibriumResult oracle;
  BestResponseDynamicsResult complete_info;
  std::vector<double> complete_info_utilities;  // physical, active users
};

ReferenceLines ComputeReferences(const ExperimentInstance& instance);

struct ExperimentResult {
  ExperimentInstance instance;
  ReferenceLines references;
  std::vector<AlgorithmRun> runs;
};

// Replicate `replicate` of every configured algorithm.
ExperimentResult RunExperiment(const ExperimentConfig& config, int replicate = 0);
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               ExperimentInstance instance, int replicate);

struct SummaryRow {
  std::string algo;  // algorithm name, "complete_info" or "oracle"
  std::size_t user = 0;  // original user index
  double terminal_expected_utility = 0.0;
  double ratio_to_reference = 0.0;
  long steps_to_threshold = -1;  // -1 for reference rows
};

// First logged step from which every later logged expected utility of the
// user stays within rel_tol * |terminal| of the terminal value.
long StepsToThreshold(const std::vector<TraceRecord>& records, std::size_t user,
                      double rel_tol = 0.1);

// Rows per algorithm and user, followed by the reference rows. Throws
// std::invalid_argument if a run was produced on a different instance.
std::vector<SummaryRow> CompareSummary(const std::vector<AlgorithmRun>& runs,
                                       const ReferenceLines& references,
                                       const ExperimentInstance& instance);

struct SweepResult {
  double gamma0_db = 0.0;
  Algorithm algorithm = Algorithm::kRla1;
  // Per original femtocell user; 0 for an inactive one.
  std::vector<double> expected_sinr;
  std::vector<bool> active;
  std::size_t active_count = 0;
  // Per replicate: mean over all femtocell users (inactive ones count as 0).
  std::vector<double> replicate_mean_sinr;
};

// Every grid point (ascending) x {RLA-I, RLA-II}; the topology is fixed and
// replicates differ only in their learning seed.
std::vector<SweepResult> SweepGamma0(const ExperimentConfig& config);

// RK4 step in learning-step time: dynamics.step_size / alpha. Throws
// ConfigError for alpha = 0 (the field vanishes identically).
double DynamicsStepSize(const ExperimentConfig& config);

// ODE trajectory from uniform strategies on the normalized table; state
// times are in learning steps.
std::vector<DynamicsState> RunDynamics(const ExperimentConfig& config,
                                       const ExperimentInstance& instance,
                                       long num_steps);

DynamicsParams MakeDynamicsParams(const ExperimentConfig& config,
                                  const ExperimentInstance& instance);

}  // namespace femtolearn

#endif  // FEMTOLEARN_EXPERIMENT_H_
