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

#ifndef FEMTOLEARN_GAME_H_
#define FEMTOLEARN_GAME_H_

// The static power-allocation game: SINR, energy efficiency and the
// SINR-thresholded utility of every user, plus expected utilities under
// mixed strategies. All quantities are linear (W, Hz, bit/s/W).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "femtolearn/channel_model.h"
#include "femtolearn/strategy.h"

namespace femtolearn {

// Finite, strictly increasing set of transmit power levels in watts.
class ActionSet {
 public:
  explicit ActionSet(std::vector<double> levels_w);
  static ActionSet FromDbm(std::span<const double> levels_dbm);

  std::size_t size() const { return levels_.size(); }
  double operator[](std::size_t j) const { return levels_[j]; }
  std::span<const double> levels() const { return levels_; }
  std::size_t max_index() const { return levels_.size() - 1; }

  bool Contains(double power_w) const;

  bool operator==(const ActionSet&) const = default;

 private:
  std::vector<double> levels_;
};

struct UserParams {
  double sinr_target_lin = 1.0;  // gamma_i^*
  double circuit_power_w = 0.0;  // additional circuit power p_i^a
  ActionSet action_set{std::vector<double>{1.0}};

  bool operator==(const UserParams&) const = default;
};

class GameInstance {
 public:
  GameInstance(GainMatrix gains, std::vector<UserParams> users,
               double bandwidth_hz, double noise_power_w);

  std::size_t num_users() const { return users_.size(); }
  std::size_t num_followers() const { return users_.size() - 1; }
  const GainMatrix& gains() const { return gains_; }
  // Gain from user j to base station i.
  double gain(std::size_t from_user, std::size_t to_bs) const {
    return gains_.h(from_user, to_bs);
  }
  const UserParams& user(std::size_t i) const { return users_[i]; }
  const std::vector<UserParams>& users() const { return users_; }
  double bandwidth_hz() const { return bandwidth_hz_; }
  double noise_power_w() const { return noise_power_w_; }

  // Number of power levels of each user.
  std::vector<std::size_t> ActionCounts() const;

  // Copy with a different SINR target for one user.
  GameInstance WithSinrTarget(std::size_t i, double target_lin) const;

  bool operator==(const GameInstance&) const = default;

 private:
  GainMatrix gains_;
  std::vector<UserParams> users_;
  double bandwidth_hz_;
  double noise_power_w_;
};

// Action index per user.
using JointAction = std::vector<std::size_t>;

// Transmit power per user; each entry is a member of that user's ActionSet.
class PowerProfile {
 public:
  static PowerProfile FromIndices(const GameInstance& game,
                                  const JointAction& indices);
  // Throws std::invalid_argument if some power is not in its action set.
  static PowerProfile FromWatts(const GameInstance& game, std::vector<double> p);

  std::span<const double> watts() const { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }
  std::size_t size() const { return p_.size(); }

 private:
  explicit PowerProfile(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

// Mixed-radix indexing of joint actions. User 0 is the most significant
// digit, so flat order is lexicographic in (a_0, a_1, ..., a_N).
class JointActionSpace {
 public:
  explicit JointActionSpace(std::vector<std::size_t> radices);

  std::size_t num_users() const { return radices_.size(); }
  std::size_t size() const { return size_; }
  std::size_t radix(std::size_t i) const { return radices_[i]; }
  std::size_t stride(std::size_t i) const { return strides_[i]; }

  std::size_t Encode(const JointAction& a) const;
  JointAction Decode(std::size_t flat) const;
  std::size_t Digit(std::size_t flat, std::size_t i) const {
    return (flat / strides_[i]) % radices_[i];
  }
  // flat with user i's digit replaced by a_i.
  std::size_t WithDigit(std::size_t flat, std::size_t i, std::size_t a_i) const {
    return flat + (a_i - Digit(flat, i)) * strides_[i];
  }

 private:
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Calls fn(a) for every joint action in lexicographic order.
void ForEachJointAction(std::span<const std::size_t> radices,
                        const std::function<void(const JointAction&)>& fn);

// gamma_i = h_ii p_i / (sum_{j != i} h_ji p_j + sigma^2). The powers are not
// checked against the action sets, so hypothetical profiles (e.g. p_i = 0)
// can be evaluated.
double SinrOfPowers(std::size_t i, std::span<const double> powers,
                    const GameInstance& game);

double Sinr(std::size_t i, const PowerProfile& profile, const GameInstance& game);

// W log2(1 + sinr) / (circuit + tx). Throws on a zero denominator.
double EnergyEfficiencyFromSinr(double bandwidth_hz, double sinr,
                                double tx_power_w, double circuit_power_w);

double EnergyEfficiency(std::size_t i, const PowerProfile& profile,
                        const GameInstance& game);

// Energy efficiency if sinr >= target, exactly 0 otherwise.
double Utility(std::size_t i, const PowerProfile& profile,
               const GameInstance& game);

// Exact expectation of u_i over the product distribution of the profile.
double ExpectedUtility(std::size_t i, const StrategyProfile& profile,
                       const GameInstance& game);

// Utilities and SINRs of every user at every pure joint action, precomputed
// once per instance. Learning and dynamics work on this table; it can be
// rescaled per user (see Normalized) while keeping physical scale factors.
class UtilityTable {
 public:
  explicit UtilityTable(const GameInstance& game);

  const JointActionSpace& space() const { return space_; }
  std::size_t num_users() const { return space_.num_users(); }
  std::size_t num_actions(std::size_t i) const { return space_.radix(i); }

  double utility(std::size_t flat, std::size_t i) const {
    return utility_[flat * num_users() + i];
  }
  double sinr(std::size_t flat, std::size_t i) const {
    return sinr_[flat * num_users() + i];
  }
  // Physical utility = scale(i) * utility(flat, i).
  double scale(std::size_t i) const { return scale_[i]; }
  std::span<const double> scales() const { return scale_; }

  // Largest utility of user i over all pure joint actions.
  double MaxUtility(std::size_t i) const;

  // Copy with every user's utilities divided by their maximum over pure
  // profiles (users that are never feasible keep scale 1).
  UtilityTable Normalized() const;

  // U_i(j, Y_{-i}): expected utility of user i playing action j against the
  // other users' mixed strategies (entry i of the profile is ignored).
  double ActionExpectedUtility(std::size_t i, std::size_t j,
                               const StrategyProfile& profile) const;

  // U_i(Y) = sum_j y_ij U_i(j, Y_{-i}).
  double ExpectedUtility(std::size_t i, const StrategyProfile& profile) const;

  // E[sinr_i] under the profile.
  double ExpectedSinr(std::size_t i, const StrategyProfile& profile) const;

 private:
  double ExpectOverOthers(std::size_t i, std::size_t j,
                          const StrategyProfile& profile,
                          const std::vector<double>& values) const;

  JointActionSpace space_;
  std::vector<double> utility_;
  std::vector<double> sinr_;
  std::vector<double> scale_;
};

}  // namespace femtolearn

#endif  // FEMTOLEARN_GAME_H_
