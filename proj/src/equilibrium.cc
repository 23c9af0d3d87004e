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

#include "femtolearn/equilibrium.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace femtolearn {
namespace {

double NormalizedWelfare(const UtilityTable& table, std::size_t flat,
                         const std::vector<double>& max_utility) {
  double total = 0.0;
  for (std::size_t i = 0; i < table.num_users(); ++i) {
    if (max_utility[i] > 0.0) total += table.utility(flat, i) / max_utility[i];
  }
  return total;
}

std::vector<std::size_t> Followers(std::size_t num_users) {
  std::vector<std::size_t> ids(num_users - 1);
  std::iota(ids.begin(), ids.end(), 1);
  return ids;
}

// Best point of the follower best-response cycle for a fixed leader action.
LeaderCandidate CycleFallback(std::size_t leader_action, const UtilityTable& table) {
  JointAction start(table.num_users(), 0);
  start[0] = leader_action;
  const BestResponseDynamicsResult dyn = IteratedBestResponse(
      table, start, Followers(table.num_users()), kMaxBestResponseSweeps);
  const std::vector<JointAction>& points =
      dyn.cycle.empty() ? std::vector<JointAction>{dyn.profile} : dyn.cycle;

  LeaderCandidate best;
  best.leader_action = leader_action;
  best.pure_nash = dyn.converged;
  bool have = false;
  for (const JointAction& a : points) {
    const double u0 = table.utility(table.space().Encode(a), 0);
    if (!have || u0 > best.leader_utility ||
        (u0 == best.leader_utility && a < best.profile)) {
      best.profile = a;
      best.leader_utility = u0;
      have = true;
    }
  }
  return best;
}

GameInstance SubGame(const GameInstance& game, const std::vector<std::size_t>& ids) {
  GainMatrix gains{SquareMatrix(ids.size())};
  std::vector<UserParams> users;
  users.reserve(ids.size());
  for (std::size_t a = 0; a < ids.size(); ++a) {
    users.push_back(game.user(ids[a]));
    for (std::size_t b = 0; b < ids.size(); ++b) {
      gains.h(a, b) = game.gain(ids[a], ids[b]);
    }
  }
  return GameInstance(std::move(gains), std::move(users), game.bandwidth_hz(),
                      game.noise_power_w());
}

}  // namespace

std::size_t BestResponse(std::size_t i, const JointAction& profile,
                         const UtilityTable& table) {
  const JointActionSpace& space = table.space();
  const std::size_t base = space.Encode(profile);
  std::size_t best = 0;
  double best_u = table.utility(space.WithDigit(base, i, 0), i);
  for (std::size_t j = 1; j < space.radix(i); ++j) {
    const double u = table.utility(space.WithDigit(base, i, j), i);
    if (u > best_u) {
      best = j;
      best_u = u;
    }
  }
  return best;
}

std::size_t BestResponse(std::size_t i, const JointAction& profile,
                         const GameInstance& game) {
  return BestResponse(i, profile, UtilityTable(game));
}

std::vector<JointAction> FollowerPureNash(std::size_t leader_action,
                                          const UtilityTable& table) {
  const JointActionSpace& space = table.space();
  if (leader_action >= space.radix(0)) {
    throw std::out_of_range("FollowerPureNash: invalid leader action");
  }
  std::vector<JointAction> equilibria;
  for (std::size_t flat = 0; flat < space.size(); ++flat) {
    if (space.Digit(flat, 0) != leader_action) continue;
    bool stable = true;
    for (std::size_t i = 1; i < space.num_users() && stable; ++i) {
      const double u = table.utility(flat, i);
      for (std::size_t j = 0; j < space.radix(i); ++j) {
        if (table.utility(space.WithDigit(flat, i, j), i) > u) {
          stable = false;
          break;
        }
      }
    }
    if (stable) equilibria.push_back(space.Decode(flat));
  }
  return equilibria;
}

std::vector<JointAction> FollowerPureNash(std::size_t leader_action,
                                          const GameInstance& game) {
  return FollowerPureNash(leader_action, UtilityTable(game));
}

JointAction EquilibriumResult::profile() const {
  JointAction a;
  a.push_back(leader_action_index);
  a.insert(a.end(), follower_action_indices.begin(),
           follower_action_indices.end());
  return a;
}

EquilibriumResult StackelbergOracle(const UtilityTable& table) {
  const JointActionSpace& space = table.space();
  EquilibriumResult result;
  std::size_t best = 0;
  for (std::size_t a0 = 0; a0 < space.radix(0); ++a0) {
    const std::vector<JointAction> nes = FollowerPureNash(a0, table);
    LeaderCandidate cand;
    if (nes.empty()) {
      cand = CycleFallback(a0, table);
      cand.pure_nash = false;
      result.is_pure_se = false;
    } else {
      cand.leader_action = a0;
      // nes is lexicographic, so strict improvement keeps the first on ties.
      for (const JointAction& ne : nes) {
        const double u0 = table.utility(space.Encode(ne), 0);
        if (cand.profile.empty() || u0 > cand.leader_utility) {
          cand.profile = ne;
          cand.leader_utility = u0;
        }
      }
    }
    if (!result.candidates.empty() &&
        cand.leader_utility > result.candidates[best].leader_utility) {
      best = a0;
    }
    result.candidates.push_back(std::move(cand));
  }

  const LeaderCandidate& chosen = result.candidates[best];
  result.leader_action_index = chosen.leader_action;
  result.follower_action_indices.assign(chosen.profile.begin() + 1,
                                        chosen.profile.end());
  const std::size_t flat = space.Encode(chosen.profile);
  for (std::size_t i = 0; i < table.num_users(); ++i) {
    result.utilities.push_back(table.utility(flat, i) * table.scale(i));
  }
  return result;
}

EquilibriumResult StackelbergOracle(const GameInstance& game) {
  return StackelbergOracle(UtilityTable(game));
}

BestResponseDynamicsResult IteratedBestResponse(
    const UtilityTable& table, JointAction start,
    const std::vector<std::size_t>& movers, int max_sweeps) {
  const JointActionSpace& space = table.space();
  BestResponseDynamicsResult result;
  result.profile = std::move(start);
  std::map<JointAction, int> seen;
  std::vector<JointAction> history;
  seen[result.profile] = 0;
  history.push_back(result.profile);

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    JointAction next = result.profile;
    for (std::size_t i : movers) next[i] = BestResponse(i, next, table);
    result.sweeps = sweep;
    if (next == result.profile) {
      result.converged = true;
      return result;
    }
    const auto it = seen.find(next);
    if (it != seen.end()) {
      result.cycle.assign(history.begin() + it->second, history.end());
      break;
    }
    seen[next] = sweep;
    history.push_back(next);
    result.profile = std::move(next);
  }
  if (result.cycle.empty()) {
    // Sweep cap reached without a repeat; treat the tail as the cycle.
    const std::size_t keep = std::min<std::size_t>(history.size(), 16);
    result.cycle.assign(history.end() - keep, history.end());
  }

  std::vector<double> max_u(table.num_users());
  for (std::size_t i = 0; i < max_u.size(); ++i) max_u[i] = table.MaxUtility(i);
  double best = -1.0;
  for (const JointAction& a : result.cycle) {
    const double w = NormalizedWelfare(table, space.Encode(a), max_u);
    if (w > best) {
      best = w;
      result.profile = a;
    }
  }
  return result;
}

BestResponseDynamicsResult CompleteInformationProfile(const UtilityTable& table) {
  std::vector<std::size_t> everyone(table.num_users());
  std::iota(everyone.begin(), everyone.end(), 0);
  return IteratedBestResponse(table, JointAction(table.num_users(), 0), everyone);
}

std::size_t RequiredFollowerLevel(std::size_t i, const GameInstance& game) {
  std::vector<double> powers(game.num_users());
  for (std::size_t s = 0; s < powers.size(); ++s) {
    powers[s] = game.user(s).action_set[game.user(s).action_set.max_index()];
  }
  const ActionSet& set = game.user(i).action_set;
  for (std::size_t j = 0; j < set.size(); ++j) {
    powers[i] = set[j];
    if (SinrOfPowers(i, powers, game) >= game.user(i).sinr_target_lin) return j;
  }
  return set.max_index();
}

double WorstCaseMacroSinr(const GameInstance& game) {
  std::vector<double> powers(game.num_users());
  powers[0] = game.user(0).action_set[game.user(0).action_set.max_index()];
  for (std::size_t i = 1; i < powers.size(); ++i) {
    powers[i] = game.user(i).action_set[RequiredFollowerLevel(i, game)];
  }
  return SinrOfPowers(0, powers, game);
}

FeasibilityResult FeasibilityAdjust(const GameInstance& game,
                                    double reduction_factor, int max_rounds) {
  if (!(reduction_factor > 0.0 && reduction_factor < 1.0)) {
    throw std::invalid_argument("FeasibilityAdjust: reduction_factor must be in (0,1)");
  }
  if (max_rounds < 0) {
    throw std::invalid_argument("FeasibilityAdjust: max_rounds must be >= 0");
  }
  FeasibilityResult result{game, true, 0};
  const double target0 = game.user(0).sinr_target_lin;
  while (WorstCaseMacroSinr(result.game) < target0) {
    if (result.rounds == max_rounds) {
      result.feasible = false;
      break;
    }
    std::vector<UserParams> users = result.game.users();
    for (std::size_t i = 1; i < users.size(); ++i) {
      users[i].sinr_target_lin *= reduction_factor;
    }
    result.game = GameInstance(result.game.gains(), std::move(users),
                               game.bandwidth_hz(), game.noise_power_w());
    ++result.rounds;
  }
  return result;
}

ProtectionResult ProtectMacrocell(const GameInstance& game) {
  const std::size_t n = game.num_users();
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  ProtectionResult result{game, ids, std::vector<bool>(n - 1, true), true};

  while (WorstCaseMacroSinr(result.game) < game.user(0).sinr_target_lin) {
    if (result.user_ids.size() == 1) {
      result.macro_feasible = false;
      break;
    }
    // Strongest interferer at the MBS at its required level.
    std::size_t worst = 1;
    double worst_interference = -1.0;
    for (std::size_t a = 1; a < result.user_ids.size(); ++a) {
      const ActionSet& set = result.game.user(a).action_set;
      const double interference =
          result.game.gain(a, 0) * set[RequiredFollowerLevel(a, result.game)];
      if (interference > worst_interference) {
        worst = a;
        worst_interference = interference;
      }
    }
    result.follower_active[result.user_ids[worst] - 1] = false;
    result.user_ids.erase(result.user_ids.begin() + static_cast<long>(worst));
    result.game = SubGame(game, result.user_ids);
  }
  return result;
}

}  // namespace femtolearn
