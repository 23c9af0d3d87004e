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

#ifndef FEMTOLEARN_CONFIG_H_
#define FEMTOLEARN_CONFIG_H_

// Experiment configuration and its JSON form. Radio quantities are given in
// dB / dBm; everything is converted to linear units when the game is built.
// Every key is optional (defaults below); unknown keys are rejected.
//
// {
//   "network":  {"bandwidth_hz", "noise_power_dbm", "num_femtocells",
//                "macro_radius_m", "femto_radius_m", "path_loss_exponent",
//                "rng_seed", "min_distance_m", "shadowing_sigma_db"},
//   "users":    {"macro": {"sinr_target_db", "circuit_power_dbm",
//                          "action_set_dbm"},
//                "femto": {...same keys...}},
//   "learning": {"alpha", "tau": "auto" | number, "tau_scale", "tau_decay",
//                "tau_min", "belief_factor": number | [per follower],
//                "num_steps", "algorithm": "rla1" | "rla2" | "noncoop" | "all"},
//   "feasibility": {"enabled", "reduction_factor", "max_rounds", "deactivate"},
//   "sweep":    {"gamma0_db": [...], "replicates"},
//   "seeds":    {"base", "replicates"},
//   "output":   {"dir", "log_every", "emit_trace", "emit_summary",
//                "emit_instance"},
//   "dynamics": {"step_size", "sample_every"}
// }

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "femtolearn/channel_model.h"
#include "femtolearn/learning.h"

namespace femtolearn {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct UserClassConfig {
  double sinr_target_db = 5.0;
  double circuit_power_dbm = 10.0;
  std::vector<double> action_set_dbm{20.0, 25.0, 30.0};
};

struct LearningConfig {
  double alpha = 0.1;
  // Fixed temperature in normalized utility units; nullopt = auto
  // (tau_scale times each user's utility scale, i.e. tau_scale normalized).
  std::optional<double> tau;
  double tau_scale = 0.05;
  double tau_decay = 1.0;
  double tau_min = 1e-3;
  // One value for every follower, or one per follower.
  std::vector<double> belief_factors{2.0};
  long num_steps = 5000;
  std::vector<Algorithm> algorithms{Algorithm::kRla1, Algorithm::kRla2,
                                    Algorithm::kNoncoop};
};

struct FeasibilityConfig {
  bool enabled = true;
  double reduction_factor = 0.5;
  int max_rounds = 10;
  bool deactivate = true;
};

struct SweepConfig {
  std::vector<double> gamma0_db{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  int replicates = 10;
};

struct SeedsConfig {
  std::uint64_t base = 1;
  int replicates = 10;
};

struct OutputConfig {
  std::string dir = "out";
  long log_every = 10;
  bool emit_trace = true;
  bool emit_summary = true;
  bool emit_instance = true;
};

struct DynamicsConfig {
  double step_size = 0.01;  // RK4 step in rescaled time alpha * t
  long sample_every = 10;
};

struct ExperimentConfig {
  NetworkConfig network;
  UserClassConfig macro{3.0, 10.0, {20.0, 25.0, 30.0}};
  UserClassConfig femto{5.0, 10.0, {20.0, 25.0, 30.0}};
  LearningConfig learning;
  FeasibilityConfig feasibility;
  SweepConfig sweep;
  SeedsConfig seeds;
  OutputConfig output;
  DynamicsConfig dynamics;

  // Throws ConfigError with the path of the first offending field.
  void Validate() const;

  // delta_i for follower k (0-based), broadcasting a single value.
  double BeliefFactor(std::size_t follower) const;
};

// Parses and validates. Throws ConfigError.
ExperimentConfig ParseConfig(const std::string& json_text);
// Throws ConfigError (including when the file cannot be read).
ExperimentConfig LoadConfig(const std::string& path);

// Algorithm selector as used on the command line: a name or "all".
std::vector<Algorithm> ParseAlgorithmSelector(const std::string& name);

}  // namespace femtolearn

#endif  // FEMTOLEARN_CONFIG_H_
