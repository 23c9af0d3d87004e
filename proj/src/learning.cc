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

#include "femtolearn/learning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace femtolearn {
namespace {

void RequireLearningRate(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("learning rate must be in [0, 1)");
  }
}

Role FollowerRole(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRla1: return Role::kFollowerRla1;
    case Algorithm::kRla2: return Role::kFollowerRla2;
    case Algorithm::kNoncoop: return Role::kNoncoop;
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace

std::string AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRla1: return "rla1";
    case Algorithm::kRla2: return "rla2";
    case Algorithm::kNoncoop: return "noncoop";
  }
  throw std::logic_error("unknown algorithm");
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "rla1") return Algorithm::kRla1;
  if (name == "rla2") return Algorithm::kRla2;
  if (name == "noncoop") return Algorithm::kNoncoop;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

JointEstimate::JointEstimate(std::size_t own_actions, std::size_t leader_actions)
    : own_(own_actions),
      leader_(leader_actions),
      u_hat_(own_actions * leader_actions, 0.0),
      counts_(own_actions * leader_actions, 0) {}

void JointEstimate::Update(std::size_t own, std::size_t leader,
                           double realized_utility) {
  if (own >= own_ || leader >= leader_) {
    throw std::out_of_range("JointEstimate::Update: index out of range");
  }
  const std::size_t cell = own * leader_ + leader;
  u_hat_[cell] += (realized_utility - u_hat_[cell]) /
                  static_cast<double>(counts_[cell] + 1);
  ++counts_[cell];
}

ContentionBelief ContentionBelief::Uniform(
    std::size_t self, std::span<const std::size_t> action_counts) {
  ContentionBelief belief;
  std::size_t size = 1;
  for (std::size_t s = 1; s < action_counts.size(); ++s) {
    if (s == self) continue;
    belief.others.push_back(s);
    belief.radices.push_back(action_counts[s]);
    size *= action_counts[s];
  }
  belief.b.assign(size, 1.0 / static_cast<double>(size));
  return belief;
}

Strategy BoltzmannStrategy(const QTable& q, double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("BoltzmannStrategy: temperature must be > 0");
  }
  if (q.q.empty()) throw std::invalid_argument("BoltzmannStrategy: empty Q-table");
  double max_q = q.q[0];
  for (double v : q.q) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("BoltzmannStrategy: non-finite Q-value");
    }
    max_q = std::max(max_q, v);
  }
  Strategy s{std::vector<double>(q.q.size())};
  double sum = 0.0;
  for (std::size_t j = 0; j < q.q.size(); ++j) {
    s.probs[j] = std::exp((q.q[j] - max_q) / temperature);
    sum += s.probs[j];
  }
  for (double& p : s.probs) p /= sum;
  return s;
}

std::size_t SampleAction(const Strategy& strategy, Rng& rng) {
  const double u = rng.Uniform01();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < strategy.size(); ++j) {
    if (strategy[j] <= 0.0) continue;
    cumulative += strategy[j];
    last_positive = j;
    if (u < cumulative) return j;
  }
  return last_positive;
}

double LeaderExpectedUtility(std::size_t leader_action,
                             std::span<const Strategy> followers,
                             const UtilityTable& table) {
  const JointActionSpace& space = table.space();
  if (followers.size() + 1 != space.num_users()) {
    throw std::invalid_argument("LeaderExpectedUtility: wrong number of followers");
  }
  std::vector<std::size_t> radices(followers.size());
  for (std::size_t s = 0; s < followers.size(); ++s) {
    radices[s] = followers[s].size();
    if (radices[s] != space.radix(s + 1)) {
      throw std::invalid_argument("LeaderExpectedUtility: strategy size mismatch");
    }
  }
  const std::size_t leader_offset = leader_action * space.stride(0);
  double total = 0.0;
  ForEachJointAction(radices, [&](const JointAction& a) {
    double weight = 1.0;
    std::size_t flat = leader_offset;
    for (std::size_t s = 0; s < a.size(); ++s) {
      weight *= followers[s][a[s]];
      flat += a[s] * space.stride(s + 1);
    }
    total += table.utility(flat, 0) * weight;
  });
  return total;
}

JointEstimate JointEstimateUpdate(JointEstimate estimate, std::size_t own_action,
                                  std::size_t leader_action,
                                  double realized_utility) {
  estimate.Update(own_action, leader_action, realized_utility);
  return estimate;
}

double FollowerEstimatedExpectedUtility(const JointEstimate& estimate,
                                        std::size_t own_action,
                                        const Strategy& leader_strategy) {
  if (leader_strategy.size() != estimate.leader_actions()) {
    throw std::invalid_argument(
        "FollowerEstimatedExpectedUtility: leader strategy size mismatch");
  }
  double total = 0.0;
  for (std::size_t a0 = 0; a0 < leader_strategy.size(); ++a0) {
    total += leader_strategy[a0] * estimate.u_hat(own_action, a0);
  }
  return total;
}

ContentionBelief ConjectureAdjust(const ContentionBelief& belief, double delta,
                                  double own_prob_new, double own_prob_old) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("ConjectureAdjust: belief factor must be >= 0");
  }
  const double shift = delta * (own_prob_new - own_prob_old);
  if (shift == 0.0) return belief;
  ContentionBelief adjusted = belief;
  double mass = 0.0;
  for (double& v : adjusted.b) {
    v = std::clamp(v - shift, 0.0, 1.0);
    mass += v;
  }
  if (!(mass > 0.0)) return belief;
  for (double& v : adjusted.b) v /= mass;
  return adjusted;
}

double Rla2EstimatedExpectedUtility(std::size_t follower, std::size_t own_action,
                                    const Strategy& leader_strategy,
                                    const ContentionBelief& belief,
                                    const UtilityTable& table) {
  const JointActionSpace& space = table.space();
  if (follower == 0 || follower >= space.num_users()) {
    throw std::invalid_argument("Rla2EstimatedExpectedUtility: not a follower");
  }
  if (leader_strategy.size() != space.radix(0) ||
      belief.others.size() + 2 != space.num_users()) {
    throw std::invalid_argument("Rla2EstimatedExpectedUtility: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t a0 = 0; a0 < space.radix(0); ++a0) {
    if (leader_strategy[a0] == 0.0) continue;
    const std::size_t base =
        a0 * space.stride(0) + own_action * space.stride(follower);
    std::size_t k = 0;
    ForEachJointAction(belief.radices, [&](const JointAction& others) {
      std::size_t flat = base;
      for (std::size_t s = 0; s < others.size(); ++s) {
        flat += others[s] * space.stride(belief.others[s]);
      }
      total += leader_strategy[a0] * table.utility(flat, follower) * belief.b[k];
      ++k;
    });
  }
  return total;
}

QTable QUpdate(QTable q, std::size_t action, double target, double alpha) {
  RequireLearningRate(alpha);
  double& value = q.q.at(action);
  value += alpha * (target - value);
  return q;
}

QTable NoncoopQUpdate(QTable q, std::size_t action, double realized_utility,
                      double alpha) {
  return QUpdate(std::move(q), action, realized_utility, alpha);
}

std::vector<AgentState> InitAgents(const UtilityTable& table,
                                   const LearnerOptions& options) {
  RequireLearningRate(options.learning_rate);
  const std::size_t n = table.num_users();
  if (options.temperatures.size() != n) {
    throw std::invalid_argument("InitAgents: need one temperature per user");
  }
  if (options.algorithm == Algorithm::kRla2 &&
      options.belief_factors.size() != n - 1) {
    throw std::invalid_argument("InitAgents: need one belief factor per follower");
  }
  const std::size_t m0 = table.num_actions(0);
  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) counts[i] = table.num_actions(i);

  std::vector<AgentState> agents(n);
  for (std::size_t i = 0; i < n; ++i) {
    AgentState& agent = agents[i];
    if (!(options.temperatures[i] > 0.0)) {
      throw std::invalid_argument("InitAgents: temperatures must be > 0");
    }
    agent.role = options.algorithm == Algorithm::kNoncoop
                     ? Role::kNoncoop
                     : (i == 0 ? Role::kLeader : FollowerRole(options.algorithm));
    agent.q_table.q.assign(counts[i], 0.0);
    agent.temperature = options.temperatures[i];
    agent.learning_rate = options.learning_rate;
    agent.strategy = BoltzmannStrategy(agent.q_table, agent.temperature);
    agent.previous_strategy = agent.strategy;
    if (i > 0 && options.algorithm != Algorithm::kNoncoop) {
      agent.joint_estimate = JointEstimate(counts[i], m0);
    }
    if (i > 0 && options.algorithm == Algorithm::kRla2) {
      agent.belief = ContentionBelief::Uniform(i, counts);
      agent.belief_factor = options.belief_factors[i - 1];
      if (!(agent.belief_factor >= 0.0)) {
        throw std::invalid_argument("InitAgents: belief factors must be >= 0");
      }
    }
  }
  return agents;
}

TraceRecord LearningStep(std::vector<AgentState>& agents,
                         const UtilityTable& table, Rng& rng,
                         Algorithm algorithm, long step) {
  const std::size_t n = agents.size();
  if (n != table.num_users()) {
    throw std::invalid_argument("LearningStep: agent count does not match game");
  }
  const JointActionSpace& space = table.space();

  // Steps 1-2: leader then followers draw their actions.
  JointAction actions(n);
  for (std::size_t i = 0; i < n; ++i) actions[i] = SampleAction(agents[i].strategy, rng);
  const std::size_t flat = space.Encode(actions);

  // Step 3: realized (thresholded) utilities.
  std::vector<double> realized(n);
  for (std::size_t i = 0; i < n; ++i) realized[i] = table.utility(flat, i);

  // Steps 4-5: targets and Q-updates, all against this step's strategies.
  const Strategy& leader_strategy = agents[0].strategy;
  std::vector<Strategy> follower_strategies;
  follower_strategies.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) follower_strategies.push_back(agents[i].strategy);

  std::vector<double> targets(n);
  if (algorithm == Algorithm::kNoncoop) {
    targets = realized;
  } else {
    targets[0] = LeaderExpectedUtility(actions[0], follower_strategies, table);
    for (std::size_t i = 1; i < n; ++i) {
      AgentState& agent = agents[i];
      const std::size_t own = actions[i];
      agent.joint_estimate.Update(own, actions[0], realized[i]);
      targets[i] =
          FollowerEstimatedExpectedUtility(agent.joint_estimate, own, leader_strategy);
      if (algorithm == Algorithm::kRla2) {
        const ContentionBelief conjectured =
            ConjectureAdjust(agent.belief, agent.belief_factor,
                             agent.strategy[own], agent.previous_strategy[own]);
        targets[i] += Rla2EstimatedExpectedUtility(i, own, leader_strategy,
                                                   conjectured, table) -
                      Rla2EstimatedExpectedUtility(i, own, leader_strategy,
                                                   agent.belief, table);
        agent.belief = conjectured;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    agents[i].q_table =
        QUpdate(std::move(agents[i].q_table), actions[i], targets[i],
                agents[i].learning_rate);
  }

  // Step 6: regenerate strategies.
  for (AgentState& agent : agents) {
    agent.previous_strategy = agent.strategy;
    agent.strategy = BoltzmannStrategy(agent.q_table, agent.temperature);
  }

  TraceRecord record;
  record.step = step;
  record.users.resize(n);
  const StrategyProfile profile = CurrentProfile(agents);
  for (std::size_t i = 0; i < n; ++i) {
    UserStepRecord& u = record.users[i];
    u.action = actions[i];
    u.realized_utility = realized[i] * table.scale(i);
    u.sinr = table.sinr(flat, i);
    u.expected_utility = table.ExpectedUtility(i, profile) * table.scale(i);
    u.strategy = profile[i];
  }
  return record;
}

StrategyProfile CurrentProfile(const std::vector<AgentState>& agents) {
  StrategyProfile profile;
  profile.reserve(agents.size());
  for (const AgentState& agent : agents) profile.push_back(agent.strategy);
  return profile;
}

}  // namespace femtolearn
