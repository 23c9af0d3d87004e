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

#include "femtolearn/experiment.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "femtolearn/random.h"
#include "femtolearn/units.h"

namespace femtolearn {
namespace {

UserParams MakeUser(const UserClassConfig& c) {
  return UserParams{DbToLinear(c.sinr_target_db), DbmToWatt(c.circuit_power_dbm),
                    ActionSet::FromDbm(c.action_set_dbm)};
}

class Fnv1a {
 public:
  void Add(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      hash_ ^= (v >> (8 * b)) & 0xffu;
      hash_ *= 0x100000001b3ull;
    }
  }
  void Add(double v) { Add(std::bit_cast<std::uint64_t>(v)); }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

void AccumulateInto(StrategyProfile& sum, const StrategyProfile& profile) {
  for (std::size_t i = 0; i < sum.size(); ++i) {
    for (std::size_t j = 0; j < sum[i].size(); ++j) sum[i].probs[j] += profile[i][j];
  }
}

}  // namespace

GameInstance BuildGame(const ExperimentConfig& config, const Topology& topology) {
  std::vector<UserParams> users;
  users.push_back(MakeUser(config.macro));
  for (int k = 0; k < config.network.num_femtocells; ++k) {
    users.push_back(MakeUser(config.femto));
  }
  return GameInstance(BuildGains(config.network, topology), std::move(users),
                      config.network.bandwidth_hz, config.network.noise_power_w);
}

ExperimentInstance BuildInstance(const ExperimentConfig& config) {
  Topology topology = GenerateTopology(config.network);
  GameInstance full = BuildGame(config, topology);

  const std::size_t n = full.num_users();
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  std::vector<bool> active(n - 1, true);
  GameInstance game = full;
  int reductions = 0;
  bool feasible = WorstCaseMacroSinr(full) >= full.user(0).sinr_target_lin;

  if (config.feasibility.enabled) {
    FeasibilityResult adjusted = FeasibilityAdjust(
        full, config.feasibility.reduction_factor, config.feasibility.max_rounds);
    game = adjusted.game;
    reductions = adjusted.rounds;
    feasible = adjusted.feasible;
    if (!feasible && config.feasibility.deactivate) {
      ProtectionResult protection = ProtectMacrocell(game);
      game = protection.game;
      ids = protection.user_ids;
      active = protection.follower_active;
      feasible = protection.macro_feasible;
    }
  }

  UtilityTable table(game);
  UtilityTable normalized = table.Normalized();
  return ExperimentInstance{std::move(topology), std::move(full), std::move(game),
                            std::move(ids), std::move(active), reductions,
                            feasible, std::move(table), std::move(normalized)};
}

void RequireFeasible(const ExperimentConfig& config,
                     const ExperimentInstance& instance) {
  if (config.feasibility.enabled && !instance.macro_feasible) {
    throw InfeasibleError(
        "macrocell SINR target unreachable after " +
        std::to_string(instance.target_reductions) + " target reductions" +
        (config.feasibility.deactivate ? " and switching off every femtocell"
                                       : ""));
  }
}

std::uint64_t InstanceFingerprint(const GameInstance& game) {
  Fnv1a h;
  h.Add(static_cast<std::uint64_t>(game.num_users()));
  h.Add(game.bandwidth_hz());
  h.Add(game.noise_power_w());
  for (std::size_t i = 0; i < game.num_users(); ++i) {
    for (std::size_t j = 0; j < game.num_users(); ++j) h.Add(game.gain(i, j));
    const UserParams& u = game.user(i);
    h.Add(u.sinr_target_lin);
    h.Add(u.circuit_power_w);
    h.Add(static_cast<std::uint64_t>(u.action_set.size()));
    for (double p : u.action_set.levels()) h.Add(p);
  }
  return h.value();
}

std::uint64_t ReplicateSeed(std::uint64_t base, int replicate) {
  return MixSeed(base, static_cast<std::uint64_t>(replicate));
}

std::vector<double> Temperatures(const ExperimentConfig& config,
                                 const ExperimentInstance& instance) {
  const double tau = config.learning.tau.value_or(config.learning.tau_scale);
  return std::vector<double>(instance.game.num_users(), tau);
}

LearnerOptions MakeLearnerOptions(const ExperimentConfig& config,
                                  const ExperimentInstance& instance,
                                  Algorithm algorithm) {
  LearnerOptions options;
  options.algorithm = algorithm;
  options.learning_rate = config.learning.alpha;
  options.temperatures = Temperatures(config, instance);
  for (std::size_t a = 1; a < instance.user_ids.size(); ++a) {
    options.belief_factors.push_back(config.BeliefFactor(instance.user_ids[a] - 1));
  }
  options.temperature_decay = config.learning.tau_decay;
  options.min_temperature = config.learning.tau_min;
  return options;
}

AlgorithmRun RunLearner(const ExperimentConfig& config,
                        const ExperimentInstance& instance, Algorithm algorithm,
                        std::uint64_t seed, bool keep_records) {
  const LearnerOptions options = MakeLearnerOptions(config, instance, algorithm);
  std::vector<AgentState> agents = InitAgents(instance.normalized, options);
  Rng rng(seed);

  AlgorithmRun run;
  run.algorithm = algorithm;
  run.seed = seed;
  run.fingerprint = InstanceFingerprint(instance.game);

  const long steps = config.learning.num_steps;
  const long tail = std::max(1L, (steps + 9) / 10);
  const long log_every = config.output.log_every;
  run.tail_average = CurrentProfile(agents);
  for (Strategy& s : run.tail_average) std::fill(s.probs.begin(), s.probs.end(), 0.0);

  for (long t = 1; t <= steps; ++t) {
    TraceRecord record = LearningStep(agents, instance.normalized, rng, algorithm, t);
    if (t > steps - tail) AccumulateInto(run.tail_average, CurrentProfile(agents));
    if (keep_records && (t % log_every == 0 || t == steps)) {
      run.records.push_back(std::move(record));
    }
    if (options.temperature_decay != 1.0) {
      for (AgentState& agent : agents) {
        agent.temperature = std::max(agent.temperature * options.temperature_decay,
                                     options.min_temperature);
      }
    }
  }
  for (Strategy& s : run.tail_average) {
    for (double& p : s.probs) p /= static_cast<double>(tail);
    RenormalizeInPlace(s.probs);
  }
  run.terminal = CurrentProfile(agents);
  for (std::size_t i = 0; i < run.terminal.size(); ++i) {
    run.terminal_expected_utility.push_back(
        instance.table.ExpectedUtility(i, run.terminal));
  }
  return run;
}

ReferenceLines ComputeReferences(const ExperimentInstance& instance) {
  ReferenceLines refs{StackelbergOracle(instance.table),
                      CompleteInformationProfile(instance.table),
                      {}};
  const std::size_t flat = instance.table.space().Encode(refs.complete_info.profile);
  for (std::size_t i = 0; i < instance.table.num_users(); ++i) {
    refs.complete_info_utilities.push_back(instance.table.utility(flat, i));
  }
  return refs;
}

ExperimentResult RunExperiment(const ExperimentConfig& config, int replicate) {
  return RunExperiment(config, BuildInstance(config), replicate);
}

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               ExperimentInstance instance, int replicate) {
  ReferenceLines refs = ComputeReferences(instance);
  const std::uint64_t seed = ReplicateSeed(config.seeds.base, replicate);
  std::vector<AlgorithmRun> runs;
  for (Algorithm a : config.learning.algorithms) {
    runs.push_back(RunLearner(config, instance, a, seed));
  }
  return ExperimentResult{std::move(instance), std::move(refs), std::move(runs)};
}

long StepsToThreshold(const std::vector<TraceRecord>& records, std::size_t user,
                      double rel_tol) {
  if (records.empty()) return -1;
  const double terminal = records.back().users.at(user).expected_utility;
  const double band = rel_tol * std::abs(terminal);
  long first = records.back().step;
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (std::abs(it->users.at(user).expected_utility - terminal) > band) break;
    first = it->step;
  }
  return first;
}

std::vector<SummaryRow> CompareSummary(const std::vector<AlgorithmRun>& runs,
                                       const ReferenceLines& references,
                                       const ExperimentInstance& instance) {
  const std::uint64_t fingerprint = InstanceFingerprint(instance.game);
  const std::size_t n = instance.game.num_users();
  const auto& reference = references.complete_info_utilities;
  if (reference.size() != n || references.oracle.utilities.size() != n) {
    throw std::invalid_argument("CompareSummary: references do not match instance");
  }
  auto ratio = [&](double value, std::size_t i) { return value / reference[i]; };

  std::vector<SummaryRow> rows;
  for (const AlgorithmRun& run : runs) {
    if (run.fingerprint != fingerprint || run.terminal_expected_utility.size() != n) {
      throw std::invalid_argument("CompareSummary: run of " +
                                  AlgorithmName(run.algorithm) +
                                  " was produced on a different instance");
    }
    for (std::size_t i = 0; i < n; ++i) {
      rows.push_back({AlgorithmName(run.algorithm), instance.user_ids[i],
                      run.terminal_expected_utility[i],
                      ratio(run.terminal_expected_utility[i], i),
                      StepsToThreshold(run.records, i)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({"complete_info", instance.user_ids[i], reference[i],
                    ratio(reference[i], i), -1});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double u = references.oracle.utilities[i];
    rows.push_back({"oracle", instance.user_ids[i], u, ratio(u, i), -1});
  }
  return rows;
}

std::vector<SweepResult> SweepGamma0(const ExperimentConfig& config) {
  if (config.sweep.gamma0_db.empty()) {
    throw ConfigError("sweep.gamma0_db", "sweep grid is empty");
  }
  const std::size_t num_fu = static_cast<std::size_t>(config.network.num_femtocells);
  const Algorithm algorithms[] = {Algorithm::kRla1, Algorithm::kRla2};

  std::vector<SweepResult> results;
  for (double gamma0_db : config.sweep.gamma0_db) {
    ExperimentConfig point = config;
    point.macro.sinr_target_db = gamma0_db;
    const ExperimentInstance instance = BuildInstance(point);

    for (Algorithm algorithm : algorithms) {
      SweepResult r;
      r.gamma0_db = gamma0_db;
      r.algorithm = algorithm;
      r.expected_sinr.assign(num_fu, 0.0);
      r.active = instance.follower_active;
      r.active_count = static_cast<std::size_t>(
          std::count(r.active.begin(), r.active.end(), true));
      for (int rep = 0; rep < config.sweep.replicates; ++rep) {
        const AlgorithmRun run =
            RunLearner(point, instance, algorithm,
                       ReplicateSeed(config.seeds.base, rep), false);
        double total = 0.0;
        for (std::size_t a = 1; a < instance.user_ids.size(); ++a) {
          const double s = instance.table.ExpectedSinr(a, run.terminal);
          r.expected_sinr[instance.user_ids[a] - 1] += s;
          total += s;
        }
        r.replicate_mean_sinr.push_back(total / static_cast<double>(num_fu));
      }
      for (double& s : r.expected_sinr) s /= config.sweep.replicates;
      results.push_back(std::move(r));
    }
  }
  return results;
}

DynamicsParams MakeDynamicsParams(const ExperimentConfig& config,
                                  const ExperimentInstance& instance) {
  return DynamicsParams{config.learning.alpha, Temperatures(config, instance)};
}

double DynamicsStepSize(const ExperimentConfig& config) {
  if (!(config.learning.alpha > 0.0)) {
    throw ConfigError("learning.alpha", "must be > 0 to integrate the dynamics");
  }
  return config.dynamics.step_size / config.learning.alpha;
}

std::vector<DynamicsState> RunDynamics(const ExperimentConfig& config,
                                       const ExperimentInstance& instance,
                                       long num_steps) {
  StrategyProfile initial;
  for (std::size_t i = 0; i < instance.game.num_users(); ++i) {
    initial.push_back(Strategy::Uniform(instance.normalized.num_actions(i)));
  }
  return IntegrateDynamics(initial, instance.normalized,
                           MakeDynamicsParams(config, instance),
                           DynamicsStepSize(config), num_steps,
                           config.dynamics.sample_every);
}

}  // namespace femtolearn
