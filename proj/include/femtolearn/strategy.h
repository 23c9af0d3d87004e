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

#ifndef FEMTOLEARN_STRATEGY_H_
#define FEMTOLEARN_STRATEGY_H_

#include <cstddef>
#include <vector>

namespace femtolearn {

inline constexpr double kSimplexTolerance = 1e-9;

// Mixed strategy over one user's discrete power levels.
struct Strategy {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t j) const { return probs[j]; }

  static Strategy Uniform(std::size_t m);
  static Strategy PointMass(std::size_t m, std::size_t index);

  // Entries in [0, 1] (within tol) summing to 1 within tol.
  bool IsOnSimplex(double tol = kSimplexTolerance) const;

  bool operator==(const Strategy&) const = default;
};

// One strategy per user, index 0 = leader.
using StrategyProfile = std::vector<Strategy>;

// Clamps negatives to zero and rescales to unit sum. Throws
// std::invalid_argument if nothing positive remains.
void RenormalizeInPlace(std::vector<double>& probs);

// Total-variation distance 0.5 * sum |a - b|.
double TotalVariation(const Strategy& a, const Strategy& b);

// Largest per-user total-variation distance between two profiles.
double ProfileTotalVariation(const StrategyProfile& a, const StrategyProfile& b);

// Throws std::invalid_argument if any strategy is off its simplex.
void RequireOnSimplex(const StrategyProfile& profile, const char* where);

}  // namespace femtolearn

#endif  // FEMTOLEARN_STRATEGY_H_
