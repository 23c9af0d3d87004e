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

#include "femtolearn/channel_model.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace femtolearn {
namespace {

constexpr int kMaxPlacementAttempts = 100000;

void RequirePositive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("network.") + field +
                                " must be finite and > 0");
  }
}

Point UniformInDisc(const Point& center, double radius, Rng& rng) {
  const double r = radius * std::sqrt(rng.Uniform01());
  const double theta = 2.0 * std::numbers::pi * rng.Uniform01();
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

bool FarFromAllStations(const Point& p, const std::vector<Point>& stations,
                        double min_distance) {
  for (const Point& bs : stations) {
    if (Distance(p, bs) < min_distance) return false;
  }
  return true;
}

Point PlaceUser(const Point& center, double radius,
                const std::vector<Point>& stations, double min_distance,
                Rng& rng) {
  for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
    const Point p = UniformInDisc(center, radius, rng);
    if (FarFromAllStations(p, stations, min_distance)) return p;
  }
  throw std::runtime_error("GenerateTopology: could not place a user at least " +
                           std::to_string(min_distance) +
                           " m from every base station");
}

}  // namespace

void NetworkConfig::Validate() const {
  RequirePositive(bandwidth_hz, "bandwidth_hz");
  RequirePositive(noise_power_w, "noise_power_w");
  RequirePositive(macro_radius_m, "macro_radius_m");
  RequirePositive(femto_radius_m, "femto_radius_m");
  RequirePositive(path_loss_exponent, "path_loss_exponent");
  RequirePositive(min_distance_m, "min_distance_m");
  if (num_femtocells < 1) {
    throw std::invalid_argument("network.num_femtocells must be >= 1");
  }
  if (!(femto_radius_m < macro_radius_m)) {
    throw std::invalid_argument(
        "network.femto_radius_m must be smaller than network.macro_radius_m");
  }
  if (!(min_distance_m < femto_radius_m)) {
    throw std::invalid_argument(
        "network.min_distance_m must be smaller than network.femto_radius_m");
  }
  if (!(shadowing_sigma_db >= 0.0) || !std::isfinite(shadowing_sigma_db)) {
    throw std::invalid_argument("network.shadowing_sigma_db must be >= 0");
  }
}

double Distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Topology GenerateTopology(const NetworkConfig& config, Rng& rng) {
  config.Validate();
  const std::size_t n = static_cast<std::size_t>(config.num_femtocells) + 1;

  Topology topo;
  topo.bs_positions.reserve(n);
  topo.bs_positions.push_back({0.0, 0.0});
  for (std::size_t i = 1; i < n; ++i) {
    topo.bs_positions.push_back(
        UniformInDisc(topo.bs_positions[0], config.macro_radius_m, rng));
  }

  topo.user_positions.assign(n, Point{});
  for (std::size_t i = 1; i < n; ++i) {
    topo.user_positions[i] =
        PlaceUser(topo.bs_positions[i], config.femto_radius_m,
                  topo.bs_positions, config.min_distance_m, rng);
  }
  topo.user_positions[0] =
      PlaceUser(topo.bs_positions[0], config.macro_radius_m, topo.bs_positions,
                config.min_distance_m, rng);

  topo.distances = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      topo.distances(i, j) = Distance(topo.user_positions[i], topo.bs_positions[j]);
    }
  }
  return topo;
}

Topology GenerateTopology(const NetworkConfig& config) {
  Rng rng(config.rng_seed);
  return GenerateTopology(config, rng);
}

GainMatrix ComputeGainMatrix(const Topology& topology,
                             double path_loss_exponent) {
  const std::size_t n = topology.distances.size();
  GainMatrix gains{SquareMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = topology.distances(j, i);
      if (!(d > 0.0)) {
        throw std::invalid_argument("ComputeGainMatrix: zero distance between user " +
                                    std::to_string(j) + " and station " +
                                    std::to_string(i));
      }
      gains.h(j, i) = std::pow(d, -path_loss_exponent);
    }
  }
  return gains;
}

void ApplyShadowing(GainMatrix& gains, double sigma_db, Rng& rng) {
  if (sigma_db == 0.0) return;
  const std::size_t n = gains.size();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      gains.h(j, i) *= std::pow(10.0, sigma_db * rng.StandardNormal() / 10.0);
    }
  }
}

GainMatrix BuildGains(const NetworkConfig& config, const Topology& topology) {
  GainMatrix gains = ComputeGainMatrix(topology, config.path_loss_exponent);
  if (config.shadowing_sigma_db > 0.0) {
    Rng shadow_rng(MixSeed(config.rng_seed, 0x5ad0));
    ApplyShadowing(gains, config.shadowing_sigma_db, shadow_rng);
  }
  return gains;
}

}  // namespace femtolearn
