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

#ifndef FEMTOLEARN_EQUILIBRIUM_H_
#define FEMTOLEARN_EQUILIBRIUM_H_

// Exhaustive equilibrium computations over the finite game: best responses,
// pure Nash equilibria among the followers for a fixed leader action, the
// Stackelberg oracle, iterated best response, and the macrocell feasibility
// protocol.

#include <cstddef>
#include <vector>

#include "femtolearn/game.h"

namespace femtolearn {

inline constexpr int kMaxBestResponseSweeps = 1000;

// Utility-maximizing action of user i with every other entry of `profile`
// held fixed (entry i is ignored). Ties go to the lowest power index.
std::size_t BestResponse(std::size_t i, const JointAction& profile,
                         const UtilityTable& table);
std::size_t BestResponse(std::size_t i, const JointAction& profile,
                         const GameInstance& game);

// Every follower joint action (leader fixed at leader_action) in which each
// follower plays a best response to the others. Returned as full joint
// actions in lexicographic order; may be empty.
std::vector<JointAction> FollowerPureNash(std::size_t leader_action,
                                          const UtilityTable& table);
std::vector<JointAction> FollowerPureNash(std::size_t leader_action,
                                          const GameInstance& game);

struct LeaderCandidate {
  std::size_t leader_action = 0;
  JointAction profile;         // selected follower response, full joint action
  double leader_utility = 0.0;
  bool pure_nash = true;       // false if the cycle fallback was used
};

struct EquilibriumResult {
  std::size_t leader_action_index = 0;
  std::vector<std::size_t> follower_action_indices;
  std::vector<double> utilities;  // physical units, all users
  bool is_pure_se = true;
  std::vector<LeaderCandidate> candidates;  // one per leader action

  JointAction profile() const;
};

// For each leader action selects the follower NE that is best for the leader
// (lexicographic tie-break); without a pure NE it falls back to the best
// point of the iterated-best-response cycle. Returns the leader action with
// the highest resulting leader utility (ties to the lowest power).
EquilibriumResult StackelbergOracle(const UtilityTable& table);
EquilibriumResult StackelbergOracle(const GameInstance& game);

struct BestResponseDynamicsResult {
  JointAction profile;
  bool converged = false;
  int sweeps = 0;
  // Profiles of the detected cycle (empty when converged).
  std::vector<JointAction> cycle;
};

// Round-robin exact best responses of the users listed in `movers`, starting
// from `start`, until a fixed point, a repeated profile, or max_sweeps.
// On a cycle, `profile` is the cycle point maximizing the sum of the users'
// utilities, each divided by that user's maximum utility.
BestResponseDynamicsResult IteratedBestResponse(
    const UtilityTable& table, JointAction start,
    const std::vector<std::size_t>& movers,
    int max_sweeps = kMaxBestResponseSweeps);

// Complete-information reference: every user best-responds with full
// knowledge of all utilities, from the all-minimum-power profile.
BestResponseDynamicsResult CompleteInformationProfile(const UtilityTable& table);

// Power a femtocell user needs: the lowest level meeting its SINR target when
// every other user transmits at maximum power, or its maximum level if none
// does.
std::size_t RequiredFollowerLevel(std::size_t i, const GameInstance& game);

// MU SINR at maximum power against every follower at its required level.
double WorstCaseMacroSinr(const GameInstance& game);

struct FeasibilityResult {
  GameInstance game;
  bool feasible = true;
  int rounds = 0;  // target reductions applied
};

// While the MU check fails, multiply every follower SINR target by
// reduction_factor (at most max_rounds times). Returns an adjusted copy.
FeasibilityResult FeasibilityAdjust(const GameInstance& game,
                                    double reduction_factor, int max_rounds);

struct ProtectionResult {
  GameInstance game;               // active users only, leader first
  std::vector<std::size_t> user_ids;  // original index of each active user
  std::vector<bool> follower_active;  // per original follower (size N)
  bool macro_feasible = true;
};

// Switches off followers, strongest interferer at the MBS first, until the
// MU check passes or no follower is left.
ProtectionResult ProtectMacrocell(const GameInstance& game);

}  // namespace femtolearn

#endif  // FEMTOLEARN_EQUILIBRIUM_H_
