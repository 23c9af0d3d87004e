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

#ifndef FEMTOLEARN_TESTS_TEST_GAMES_H_
#define FEMTOLEARN_TESTS_TEST_GAMES_H_

// Small hand-built instances shared by the unit tests.

#include <cstddef>
#include <vector>

#include "femtolearn/game.h"
#include "femtolearn/units.h"

namespace femtolearn::testing {

// gain[j][i]: from user j to base station i. Levels in watts.
inline GameInstance MakeGame(const std::vector<std::vector<double>>& gain,
                             const std::vector<std::vector<double>>& levels_w,
                             const std::vector<double>& targets_lin,
                             const std::vector<double>& circuit_w,
                             double bandwidth_hz = 1e6, double noise_w = 1e-14) {
  const std::size_t n = gain.size();
  GainMatrix g{SquareMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) g.h(j, i) = gain[j][i];
  }
  std::vector<UserParams> users;
  for (std::size_t i = 0; i < n; ++i) {
    users.push_back({targets_lin[i], circuit_w[i], ActionSet(levels_w[i])});
  }
  return GameInstance(std::move(g), std::move(users), bandwidth_hz, noise_w);
}

// Three users on {20, 25, 30} dBm with targets 3/5/5 dB, 10 dBm circuit
// power and a fixed, moderately coupled gain matrix.
inline GameInstance DeskGame() {
  const std::vector<double> levels{DbmToWatt(20.0), DbmToWatt(25.0), DbmToWatt(30.0)};
  return MakeGame({{1e-9, 2e-13, 3e-13},
                   {1e-13, 1e-5, 2e-9},
                   {5e-14, 3e-9, 4e-6}},
                  {levels, levels, levels},
                  {DbToLinear(3.0), DbToLinear(5.0), DbToLinear(5.0)},
                  {DbmToWatt(10.0), DbmToWatt(10.0), DbmToWatt(10.0)});
}

}  // namespace femtolearn::testing

#endif  // FEMTOLEARN_TESTS_TEST_GAMES_H_
