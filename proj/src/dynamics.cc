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

#include "femtolearn/dynamics.h"

#include <algorithm>
#include <cmath>

namespace femtolearn {
namespace {

void CheckParams(const StrategyProfile& profile, const UtilityTable& table,
                 const DynamicsParams& params) {
  if (profile.size() != table.num_users() ||
      params.temperatures.size() != table.num_users()) {
    throw std::invalid_argument("dynamics: dimension mismatch");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i].size() != table.num_actions(i)) {
      throw std::invalid_argument("dynamics: strategy size mismatch");
    }
    if (!(params.temperatures[i] > 0.0)) {
      throw std::invalid_argument("dynamics: temperatures must be > 0");
    }
  }
}

void FloorAndRenormalize(StrategyProfile& profile) {
  for (Strategy& s : profile) {
    for (double& p : s.probs) p = std::max(p, kProbabilityFloor);
    RenormalizeInPlace(s.probs);
  }
}

StrategyProfile Advance(const StrategyProfile& y, const StrategyField& k,
                        double h) {
  StrategyProfile out = y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < y[i].size(); ++j) out[i].probs[j] += h * k[i][j];
  }
  return out;
}

}  // namespace

StrategyField StrategyDerivative(const StrategyProfile& profile,
                                 const UtilityTable& table,
                                 const DynamicsParams& params) {
  CheckParams(profile, table, params);
  StrategyField field(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const std::size_t m = profile[i].size();
    const double tau = params.temperatures[i];
    std::vector<double> y(m);
    std::vector<double> action_u(m);
    for (std::size_t j = 0; j < m; ++j) {
      y[j] = std::max(profile[i][j], kProbabilityFloor);
      action_u[j] = table.ActionExpectedUtility(i, j, profile);
    }
    double mean_u = 0.0;
    for (std::size_t l = 0; l < m; ++l) mean_u += profile[i][l] * action_u[l];

    field[i].resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      double entropy = 0.0;
      for (std::size_t l = 0; l < m; ++l) {
        entropy += profile[i][l] * std::log(y[j] / y[l]);
      }
      field[i][j] = params.learning_rate / tau * profile[i][j] *
                    ((action_u[j] - mean_u) - tau * entropy);
    }
  }
  return field;
}

std::vector<DynamicsState> IntegrateDynamics(const StrategyProfile& initial,
                                             const UtilityTable& table,
                                             const DynamicsParams& params,
                                             double step_size, long num_steps,
                                             long sample_every) {
  if (!(step_size > 0.0)) {
    throw std::invalid_argument("IntegrateDynamics: step_size must be > 0");
  }
  if (num_steps < 0 || sample_every < 1) {
    throw std::invalid_argument("IntegrateDynamics: bad step counts");
  }
  CheckParams(initial, table, params);

  std::vector<DynamicsState> trajectory;
  trajectory.push_back({initial, 0.0});
  StrategyProfile y = initial;
  const double h = step_size;
  for (long step = 1; step <= num_steps; ++step) {
    const StrategyField k1 = StrategyDerivative(y, table, params);
    const StrategyField k2 = StrategyDerivative(Advance(y, k1, h / 2), table, params);
    const StrategyField k3 = StrategyDerivative(Advance(y, k2, h / 2), table, params);
    const StrategyField k4 = StrategyDerivative(Advance(y, k3, h), table, params);
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t j = 0; j < y[i].size(); ++j) {
        y[i].probs[j] +=
            h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
        if (!std::isfinite(y[i].probs[j])) throw DynamicsDiverged(step);
      }
    }
    FloorAndRenormalize(y);
    if (step % sample_every == 0 || step == num_steps) {
      trajectory.push_back({y, static_cast<double>(step) * h});
    }
  }
  return trajectory;
}

StationarityReport StationarityCheck(const StrategyProfile& profile,
                                     const UtilityTable& table,
                                     const DynamicsParams& params,
                                     double tolerance) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("StationarityCheck: tolerance must be > 0");
  }
  const StrategyField field = StrategyDerivative(profile, table, params);
  StationarityReport report;
  for (const auto& user : field) {
    for (double v : user) report.residual = std::max(report.residual, std::abs(v));
  }
  report.stationary = report.residual < tolerance;
  return report;
}

}  // namespace femtolearn
