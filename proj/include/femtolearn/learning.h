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

#ifndef FEMTOLEARN_LEARNING_H_
#define FEMTOLEARN_LEARNING_H_

// Stateless Q-learning agents for the leader/follower power game.
//
// Every user keeps one Q-value per power level and plays the Boltzmann
// (softmax) strategy of its Q-values. Only the Q-value of the action played
// in a step is updated. What differs between algorithms is the update
// target:
//
//   leader (RLA-I/II)   exact U_0(a_0, y_{-0}); the MBS knows every follower
//                       strategy.
//   follower RLA-I      sum_{a_0} y_0(a_0) * Uhat(a_i, a_0), where Uhat is the
//                       running mean of realized utility per (own, leader)
//                       action pair and y_0 is the broadcast leader strategy.
//   follower RLA-II     the RLA-I target plus the change in expected utility
//                       implied by the conjectured reaction of the other
//                       followers to the follower's own strategy change.
//   non-cooperative     the realized utility sample; no information exchange.
//
// Utilities inside the learners are in normalized units (each user's
// utilities divided by its maximum over pure profiles); temperatures are in
// the same units.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "femtolearn/game.h"
#include "femtolearn/random.h"
#include "femtolearn/strategy.h"

namespace femtolearn {

enum class Algorithm { kRla1, kRla2, kNoncoop };

std::string AlgorithmName(Algorithm algorithm);  // "rla1", "rla2", "noncoop"
Algorithm ParseAlgorithm(const std::string& name);

struct QTable {
  std::vector<double> q;

  bool operator==(const QTable&) const = default;
};

// Follower's running-average utility per (own action, leader action).
class JointEstimate {
 public:
  JointEstimate() = default;
  JointEstimate(std::size_t own_actions, std::size_t leader_actions);

  std::size_t own_actions() const { return own_; }
  std::size_t leader_actions() const { return leader_; }
  double u_hat(std::size_t own, std::size_t leader) const {
    return u_hat_.at(own * leader_ + leader);
  }
  std::uint64_t count(std::size_t own, std::size_t leader) const {
    return counts_.at(own * leader_ + leader);
  }

  // Running-mean update of one cell; every other cell is unchanged.
  void Update(std::size_t own, std::size_t leader, double realized_utility);

  bool operator==(const JointEstimate&) const = default;

 private:
  std::size_t own_ = 0;
  std::size_t leader_ = 0;
  std::vector<double> u_hat_;
  std::vector<std::uint64_t> counts_;
};

// A follower's probability measure over the joint actions of the other
// followers (ascending user order, first listed user most significant).
struct ContentionBelief {
  std::vector<std::size_t> others;  // user indices, leader and self excluded
  std::vector<std::size_t> radices;
  std::vector<double> b;

  static ContentionBelief Uniform(std::size_t self,
                                  std::span<const std::size_t> action_counts);

  bool operator==(const ContentionBelief&) const = default;
};

enum class Role { kLeader, kFollowerRla1, kFollowerRla2, kNoncoop };

struct AgentState {
  Role role = Role::kLeader;
  QTable q_table;
  Strategy strategy;
  Strategy previous_strategy;       // strategy of the preceding step
  JointEstimate joint_estimate;     // followers only
  ContentionBelief belief;          // RLA-II followers only
  double belief_factor = 0.0;       // delta_i >= 0
  double temperature = 1.0;         // tau_i > 0
  double learning_rate = 0.1;       // alpha in [0, 1)

  bool operator==(const AgentState&) const = default;
};

// probs[j] proportional to exp(q[j] / tau), evaluated with the maximum
// subtracted. Throws std::invalid_argument for tau <= 0 or non-finite q.
Strategy BoltzmannStrategy(const QTable& q, double temperature);

// Inverse-CDF draw over the stored order.
std::size_t SampleAction(const Strategy& strategy, Rng& rng);

// U_0(a_0, y_{-0}) by enumeration of the follower joint actions.
// `followers` holds the strategies of users 1..N.
double LeaderExpectedUtility(std::size_t leader_action,
                             std::span<const Strategy> followers,
                             const UtilityTable& table);

JointEstimate JointEstimateUpdate(JointEstimate estimate, std::size_t own_action,
                                  std::size_t leader_action,
                                  double realized_utility);

// sum_{a_0} y_0(a_0) * Uhat(own, a_0).
double FollowerEstimatedExpectedUtility(const JointEstimate& estimate,
                                        std::size_t own_action,
                                        const Strategy& leader_strategy);

// Conjectured contention measure: every entry minus
// delta * (own_prob_new - own_prob_old), clamped to [0, 1] and renormalized.
// A zero shift returns the belief unchanged; if clamping removes all mass the
// belief is also returned unchanged.
ContentionBelief ConjectureAdjust(const ContentionBelief& belief, double delta,
                                  double own_prob_new, double own_prob_old);

// sum over (a_0, a_{-(0,i)}) of y_0(a_0) * u_i(own, a_0, a_{-(0,i)}) * b(a_{-(0,i)}),
// with u_i read from the table.
double Rla2EstimatedExpectedUtility(std::size_t follower, std::size_t own_action,
                                    const Strategy& leader_strategy,
                                    const ContentionBelief& belief,
                                    const UtilityTable& table);

// q[action] += alpha * (target - q[action]). Throws unless alpha in [0, 1).
QTable QUpdate(QTable q, std::size_t action, double target, double alpha);

// Same recursion with the realized utility sample as the target.
QTable NoncoopQUpdate(QTable q, std::size_t action, double realized_utility,
                      double alpha);

struct LearnerOptions {
  Algorithm algorithm = Algorithm::kRla1;
  double learning_rate = 0.1;
  std::vector<double> temperatures;    // per user, normalized units
  std::vector<double> belief_factors;  // per follower (size N); RLA-II only
  // Geometric temperature annealing per step; 1 disables it.
  double temperature_decay = 1.0;
  double min_temperature = 1e-3;
};

// Agents with zero Q-values and uniform strategies.
std::vector<AgentState> InitAgents(const UtilityTable& table,
                                   const LearnerOptions& options);

struct UserStepRecord {
  std::size_t action = 0;
  double realized_utility = 0.0;  // physical units
  double sinr = 0.0;              // linear
  double expected_utility = 0.0;  // physical units, under `strategy`
  Strategy strategy;              // strategy after this step's update
};

struct TraceRecord {
  long step = 0;
  std::vector<UserStepRecord> users;
};

// One iteration: the leader samples and broadcasts its strategy, followers
// sample, realized utilities are observed, every agent updates the Q-value
// of its played action with its algorithm's target, and all strategies are
// regenerated. `table` must be the (normalized) table the agents learn on;
// trace values are converted back to physical units with table.scale().
TraceRecord LearningStep(std::vector<AgentState>& agents,
                         const UtilityTable& table, Rng& rng,
                         Algorithm algorithm, long step);

StrategyProfile CurrentProfile(const std::vector<AgentState>& agents);

}  // namespace femtolearn

#endif  // FEMTOLEARN_LEARNING_H_
