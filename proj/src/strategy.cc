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

#include "femtolearn/strategy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace femtolearn {

Strategy Strategy::Uniform(std::size_t m) {
  if (m == 0) throw std::invalid_argument("Strategy::Uniform: empty");
  return Strategy{std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

Strategy Strategy::PointMass(std::size_t m, std::size_t index) {
  if (index >= m) throw std::out_of_range("Strategy::PointMass: bad index");
  Strategy s{std::vector<double>(m, 0.0)};
  s.probs[index] = 1.0;
  return s;
}

bool Strategy::IsOnSimplex(double tol) const {
  if (probs.empty()) return false;
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -tol || p > 1.0 + tol) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

void RenormalizeInPlace(std::vector<double>& probs) {
  double sum = 0.0;
  for (double& p : probs) {
    p = std::max(p, 0.0);
    sum += p;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw std::invalid_argument("RenormalizeInPlace: no positive mass");
  }
  for (double& p : probs) p /= sum;
}

double TotalVariation(const Strategy& a, const Strategy& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("TotalVariation: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::abs(a[j] - b[j]);
  return 0.5 * sum;
}

double ProfileTotalVariation(const StrategyProfile& a, const StrategyProfile& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("ProfileTotalVariation: dimension mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, TotalVariation(a[i], b[i]));
  }
  return worst;
}

void RequireOnSimplex(const StrategyProfile& profile, const char* where) {
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!profile[i].IsOnSimplex()) {
      throw std::invalid_argument(std::string(where) + ": strategy of user " +
                                  std::to_string(i) + " is not on the simplex");
    }
  }
}

}  // namespace femtolearn
