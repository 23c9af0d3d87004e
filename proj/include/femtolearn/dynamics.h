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

#ifndef FEMTOLEARN_DYNAMICS_H_
#define FEMTOLEARN_DYNAMICS_H_

// Small-learning-rate limit of Boltzmann Q-learning as an ODE on the product
// of simplices:
//
//   dy_ij/dt = (alpha / tau_i) * y_ij * { [U_i(j, Y_-i) - sum_l y_il U_i(l, Y_-i)]
//                                        - tau_i * sum_l y_il ln(y_ij / y_il) }
//
// with exact expected utilities U_i read from a UtilityTable. Stationary
// points are the logit (softmax) equilibria of the table.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "femtolearn/game.h"
#include "femtolearn/strategy.h"

namespace femtolearn {

inline constexpr double kProbabilityFloor = 1e-12;

struct DynamicsParams {
  double learning_rate = 0.1;
  std::vector<double> temperatures;  // per user
};

// Per user, per action time derivative.
using StrategyField = std::vector<std::vector<double>>;

StrategyField StrategyDerivative(const StrategyProfile& profile,
                                 const UtilityTable& table,
                                 const DynamicsParams& params);

struct DynamicsState {
  StrategyProfile profile;
  double time = 0.0;
};

class DynamicsDiverged : public std::runtime_error {
 public:
  explicit DynamicsDiverged(long step)
      : std::runtime_error("dynamics diverged at step " + std::to_string(step)),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

// Fixed-step RK4; each strategy is floored and renormalized after every step.
// Returns num_steps + 1 states (the initial one first), keeping every
// `sample_every`-th state plus the last.
std::vector<DynamicsState> IntegrateDynamics(const StrategyProfile& initial,
                                             const UtilityTable& table,
                                             const DynamicsParams& params,
                                             double step_size, long num_steps,
                                             long sample_every = 1);

struct StationarityReport {
  double residual = 0.0;  // max-norm of the field
  bool stationary = false;
};

StationarityReport StationarityCheck(const StrategyProfile& profile,
                                     const UtilityTable& table,
                                     const DynamicsParams& params,
                                     double tolerance);

}  // namespace femtolearn

#endif  // FEMTOLEARN_DYNAMICS_H_
