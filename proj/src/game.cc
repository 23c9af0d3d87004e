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

#include "femtolearn/game.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "femtolearn/units.h"

namespace femtolearn {

ActionSet::ActionSet(std::vector<double> levels_w) : levels_(std::move(levels_w)) {
  if (levels_.empty()) throw std::invalid_argument("ActionSet: empty");
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (!std::isfinite(levels_[j]) || !(levels_[j] > 0.0)) {
      throw std::invalid_argument("ActionSet: levels must be finite and > 0");
    }
    if (j > 0 && !(levels_[j] > levels_[j - 1])) {
      throw std::invalid_argument("ActionSet: levels must be strictly increasing");
    }
  }
}

ActionSet ActionSet::FromDbm(std::span<const double> levels_dbm) {
  std::vector<double> watts;
  watts.reserve(levels_dbm.size());
  for (double dbm : levels_dbm) watts.push_back(DbmToWatt(dbm));
  return ActionSet(std::move(watts));
}

bool ActionSet::Contains(double power_w) const {
  return std::find(levels_.begin(), levels_.end(), power_w) != levels_.end();
}

GameInstance::GameInstance(GainMatrix gains, std::vector<UserParams> users,
                           double bandwidth_hz, double noise_power_w)
    : gains_(std::move(gains)),
      users_(std::move(users)),
      bandwidth_hz_(bandwidth_hz),
      noise_power_w_(noise_power_w) {
  if (users_.empty()) throw std::invalid_argument("GameInstance: no users");
  if (gains_.size() != users_.size()) {
    throw std::invalid_argument("GameInstance: gain matrix is " +
                                std::to_string(gains_.size()) + "x" +
                                std::to_string(gains_.size()) + " but there are " +
                                std::to_string(users_.size()) + " users");
  }
  if (!(bandwidth_hz_ > 0.0) || !std::isfinite(bandwidth_hz_)) {
    throw std::invalid_argument("GameInstance: bandwidth must be > 0");
  }
  if (!(noise_power_w_ > 0.0) || !std::isfinite(noise_power_w_)) {
    throw std::invalid_argument("GameInstance: noise power must be > 0");
  }
  for (std::size_t j = 0; j < gains_.size(); ++j) {
    for (std::size_t i = 0; i < gains_.size(); ++i) {
      const double h = gains_.h(j, i);
      if (!std::isfinite(h) || h < 0.0 || (i == j && h == 0.0)) {
        throw std::invalid_argument("GameInstance: invalid gain h(" +
                                    std::to_string(j) + "," + std::to_string(i) +
                                    ")");
      }
    }
  }
  for (const UserParams& u : users_) {
    if (!(u.sinr_target_lin > 0.0) || !std::isfinite(u.sinr_target_lin)) {
      throw std::invalid_argument("GameInstance: SINR target must be > 0");
    }
    if (!(u.circuit_power_w >= 0.0) || !std::isfinite(u.circuit_power_w)) {
      throw std::invalid_argument("GameInstance: circuit power must be >= 0");
    }
  }
}

std::vector<std::size_t> GameInstance::ActionCounts() const {
  std::vector<std::size_t> counts;
  counts.reserve(users_.size());
  for (const UserParams& u : users_) counts.push_back(u.action_set.size());
  return counts;
}

GameInstance GameInstance::WithSinrTarget(std::size_t i, double target_lin) const {
  std::vector<UserParams> users = users_;
  users.at(i).sinr_target_lin = target_lin;
  return GameInstance(gains_, std::move(users), bandwidth_hz_, noise_power_w_);
}

PowerProfile PowerProfile::FromIndices(const GameInstance& game,
                                       const JointAction& indices) {
  if (indices.size() != game.num_users()) {
    throw std::invalid_argument("PowerProfile: wrong number of users");
  }
  std::vector<double> p(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const ActionSet& set = game.user(i).action_set;
    if (indices[i] >= set.size()) {
      throw std::out_of_range("PowerProfile: action index out of range for user " +
                              std::to_string(i));
    }
    p[i] = set[indices[i]];
  }
  return PowerProfile(std::move(p));
}

PowerProfile PowerProfile::FromWatts(const GameInstance& game,
                                     std::vector<double> p) {
  if (p.size() != game.num_users()) {
    throw std::invalid_argument("PowerProfile: wrong number of users");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!game.user(i).action_set.Contains(p[i])) {
      throw std::invalid_argument("PowerProfile: power of user " +
                                  std::to_string(i) + " is not in its action set");
    }
  }
  return PowerProfile(std::move(p));
}

JointActionSpace::JointActionSpace(std::vector<std::size_t> radices)
    : radices_(std::move(radices)), strides_(radices_.size()) {
  for (std::size_t i = radices_.size(); i-- > 0;) {
    if (radices_[i] == 0) throw std::invalid_argument("JointActionSpace: empty set");
    strides_[i] = size_;
    size_ *= radices_[i];
  }
}

std::size_t JointActionSpace::Encode(const JointAction& a) const {
  if (a.size() != radices_.size()) {
    throw std::invalid_argument("JointActionSpace::Encode: dimension mismatch");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= radices_[i]) throw std::out_of_range("JointActionSpace::Encode");
    flat += a[i] * strides_[i];
  }
  return flat;
}

JointAction JointActionSpace::Decode(std::size_t flat) const {
  JointAction a(radices_.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = Digit(flat, i);
  return a;
}

void ForEachJointAction(std::span<const std::size_t> radices,
                        const std::function<void(const JointAction&)>& fn) {
  JointAction a(radices.size(), 0);
  for (std::size_t r : radices) {
    if (r == 0) return;
  }
  while (true) {
    fn(a);
    std::size_t pos = a.size();
    while (pos > 0) {
      --pos;
      if (++a[pos] < radices[pos]) break;
      a[pos] = 0;
      if (pos == 0) return;
    }
    if (a.empty()) return;
  }
}

double SinrOfPowers(std::size_t i, std::span<const double> powers,
                    const GameInstance& game) {
  double interference = 0.0;
  for (std::size_t j = 0; j < powers.size(); ++j) {
    if (j == i) continue;
    interference += game.gain(j, i) * powers[j];
  }
  return game.gain(i, i) * powers[i] / (interference + game.noise_power_w());
}

double Sinr(std::size_t i, const PowerProfile& profile, const GameInstance& game) {
  return SinrOfPowers(i, profile.watts(), game);
}

double EnergyEfficiencyFromSinr(double bandwidth_hz, double sinr,
                                double tx_power_w, double circuit_power_w) {
  const double consumed = circuit_power_w + tx_power_w;
  if (consumed == 0.0) {
    throw std::invalid_argument("EnergyEfficiency: zero total power");
  }
  return bandwidth_hz * std::log2(1.0 + sinr) / consumed;
}

double EnergyEfficiency(std::size_t i, const PowerProfile& profile,
                        const GameInstance& game) {
  return EnergyEfficiencyFromSinr(game.bandwidth_hz(), Sinr(i, profile, game),
                                  profile[i], game.user(i).circuit_power_w);
}

double Utility(std::size_t i, const PowerProfile& profile,
               const GameInstance& game) {
  const double gamma = Sinr(i, profile, game);
  if (gamma < game.user(i).sinr_target_lin) return 0.0;
  return EnergyEfficiencyFromSinr(game.bandwidth_hz(), gamma, profile[i],
                                  game.user(i).circuit_power_w);
}

double ExpectedUtility(std::size_t i, const StrategyProfile& profile,
                       const GameInstance& game) {
  if (profile.size() != game.num_users() || i >= game.num_users()) {
    throw std::invalid_argument("ExpectedUtility: dimension mismatch");
  }
  const std::vector<std::size_t> counts = game.ActionCounts();
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (profile[s].size() != counts[s]) {
      throw std::invalid_argument("ExpectedUtility: strategy of user " +
                                  std::to_string(s) + " has wrong length");
    }
  }
  double total = 0.0;
  ForEachJointAction(counts, [&](const JointAction& a) {
    double weight = 1.0;
    for (std::size_t s = 0; s < a.size(); ++s) weight *= profile[s][a[s]];
    if (weight == 0.0) return;
    total += Utility(i, PowerProfile::FromIndices(game, a), game) * weight;
  });
  return total;
}

UtilityTable::UtilityTable(const GameInstance& game)
    : space_(game.ActionCounts()), scale_(game.num_users(), 1.0) {
  const std::size_t n = game.num_users();
  utility_.resize(space_.size() * n);
  sinr_.resize(space_.size() * n);
  for (std::size_t flat = 0; flat < space_.size(); ++flat) {
    const PowerProfile p = PowerProfile::FromIndices(game, space_.Decode(flat));
    for (std::size_t i = 0; i < n; ++i) {
      sinr_[flat * n + i] = Sinr(i, p, game);
      utility_[flat * n + i] = Utility(i, p, game);
    }
  }
}

double UtilityTable::MaxUtility(std::size_t i) const {
  double best = 0.0;
  for (std::size_t flat = 0; flat < space_.size(); ++flat) {
    best = std::max(best, utility(flat, i));
  }
  return best;
}

UtilityTable UtilityTable::Normalized() const {
  UtilityTable out = *this;
  const std::size_t n = num_users();
  for (std::size_t i = 0; i < n; ++i) {
    const double max_u = MaxUtility(i);
    if (!(max_u > 0.0)) continue;
    for (std::size_t flat = 0; flat < space_.size(); ++flat) {
      out.utility_[flat * n + i] = utility_[flat * n + i] / max_u;
    }
    out.scale_[i] = scale_[i] * max_u;
  }
  return out;
}

double UtilityTable::ExpectOverOthers(std::size_t i, std::size_t j,
                                      const StrategyProfile& profile,
                                      const std::vector<double>& values) const {
  const std::size_t n = num_users();
  if (profile.size() != n) {
    throw std::invalid_argument("UtilityTable: profile has wrong number of users");
  }
  double total = 0.0;
  for (std::size_t flat = 0; flat < space_.size(); ++flat) {
    if (space_.Digit(flat, i) != j) continue;
    double weight = 1.0;
    for (std::size_t s = 0; s < n && weight != 0.0; ++s) {
      if (s != i) weight *= profile[s][space_.Digit(flat, s)];
    }
    if (weight != 0.0) total += values[flat * n + i] * weight;
  }
  return total;
}

double UtilityTable::ActionExpectedUtility(std::size_t i, std::size_t j,
                                           const StrategyProfile& profile) const {
  return ExpectOverOthers(i, j, profile, utility_);
}

double UtilityTable::ExpectedUtility(std::size_t i,
                                     const StrategyProfile& profile) const {
  double total = 0.0;
  for (std::size_t j = 0; j < num_actions(i); ++j) {
    if (profile[i][j] != 0.0) {
      total += profile[i][j] * ActionExpectedUtility(i, j, profile);
    }
  }
  return total;
}

double UtilityTable::ExpectedSinr(std::size_t i,
                                  const StrategyProfile& profile) const {
  double total = 0.0;
  for (std::size_t j = 0; j < num_actions(i); ++j) {
    if (profile[i][j] != 0.0) {
      total += profile[i][j] * ExpectOverOthers(i, j, profile, sinr_);
    }
  }
  return total;
}

}  // namespace femtolearn
