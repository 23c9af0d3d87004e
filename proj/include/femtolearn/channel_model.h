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

#ifndef FEMTOLEARN_CHANNEL_MODEL_H_
#define FEMTOLEARN_CHANNEL_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "femtolearn/random.h"

namespace femtolearn {

// Dense row-major square matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t row, std::size_t col) const {
    return data_[row * n_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) {
    return data_[row * n_ + col];
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Radio and layout parameters of one macrocell with N co-channel femtocells.
// Index 0 is always the macro base station (MBS) and its scheduled user (MU);
// index i >= 1 is femto base station i (FBS) and its user (FU).
struct NetworkConfig {
  double bandwidth_hz = 1e6;
  double noise_power_w = 1e-14;
  int num_femtocells = 2;
  double macro_radius_m = 500.0;
  double femto_radius_m = 20.0;
  double path_loss_exponent = 4.0;
  std::uint64_t rng_seed = 3;
  // Every user is kept at least this far from every base station.
  double min_distance_m = 1.0;
  // Log-normal shadowing standard deviation; 0 disables it.
  double shadowing_sigma_db = 0.0;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double Distance(const Point& a, const Point& b);

struct Topology {
  std::vector<Point> bs_positions;    // [0] = MBS
  std::vector<Point> user_positions;  // [i] served by bs_positions[i]
  // distances(i, j): user i to base station j, metres.
  SquareMatrix distances;

  std::size_t num_users() const { return user_positions.size(); }
  bool operator==(const Topology&) const = default;
};

// h(j, i): linear channel gain from user j to base station i.
struct GainMatrix {
  SquareMatrix h;

  std::size_t size() const { return h.size(); }
  bool operator==(const GainMatrix&) const = default;
};

// Places the MBS at the origin, the FBSs uniformly in the macro disc, each FU
// uniformly in its femto disc and the MU uniformly in the macro disc.
// Users closer than min_distance_m to any base station are resampled.
Topology GenerateTopology(const NetworkConfig& config, Rng& rng);

// Convenience overload seeding the stream from config.rng_seed.
Topology GenerateTopology(const NetworkConfig& config);

// h(j, i) = distances(j, i)^(-n). Throws on a zero (or negative) distance.
GainMatrix ComputeGainMatrix(const Topology& topology, double path_loss_exponent);

// Multiplies every entry by an independent 10^(sigma_db * Z / 10) factor.
void ApplyShadowing(GainMatrix& gains, double sigma_db, Rng& rng);

// Topology -> gains for a config, including optional shadowing drawn from a
// stream derived from config.rng_seed.
GainMatrix BuildGains(const NetworkConfig& config, const Topology& topology);

}  // namespace femtolearn

#endif  // FEMTOLEARN_CHANNEL_MODEL_H_
