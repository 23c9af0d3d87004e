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

#include "femtolearn/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "femtolearn/units.h"

namespace femtolearn {
namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string Path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* Find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void Number(const std::string& key, double& out) {
    if (const json* v = Find(key)) {
      if (!v->is_number()) throw ConfigError(Path(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(Path(key), "must be finite");
    }
  }

  template <typename Int>
  void Integer(const std::string& key, Int& out) {
    if (const json* v = Find(key)) {
      if (!v->is_number_integer()) {
        throw ConfigError(Path(key), "expected an integer");
      }
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = static_cast<Int>(v->get<std::uint64_t>());
        } else if (v->get<std::int64_t>() >= 0) {
          out = static_cast<Int>(v->get<std::int64_t>());
        } else {
          throw ConfigError(Path(key), "must be non-negative");
        }
      } else {
        out = static_cast<Int>(v->get<std::int64_t>());
      }
    }
  }

  void Bool(const std::string& key, bool& out) {
    if (const json* v = Find(key)) {
      if (!v->is_boolean()) throw ConfigError(Path(key), "expected a boolean");
      out = v->get<bool>();
    }
  }

  void String(const std::string& key, std::string& out) {
    if (const json* v = Find(key)) {
      if (!v->is_string()) throw ConfigError(Path(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void NumberList(const std::string& key, std::vector<double>& out) {
    if (const json* v = Find(key)) {
      if (!v->is_array()) throw ConfigError(Path(key), "expected an array");
      std::vector<double> values;
      for (std::size_t k = 0; k < v->size(); ++k) {
        const json& e = (*v)[k];
        const std::string p = Path(key) + "[" + std::to_string(k) + "]";
        if (!e.is_number()) throw ConfigError(p, "expected a number");
        values.push_back(e.get<double>());
        if (!std::isfinite(values.back())) throw ConfigError(p, "must be finite");
      }
      out = std::move(values);
    }
  }

  // Rejects keys that no reader asked for.
  void Finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(Path(it.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void ParseUserClass(const json& node, const std::string& path,
                    UserClassConfig& out) {
  Section s(node, path);
  s.Number("sinr_target_db", out.sinr_target_db);
  s.Number("circuit_power_dbm", out.circuit_power_dbm);
  s.NumberList("action_set_dbm", out.action_set_dbm);
  s.Finish();
}

void ValidateUserClass(const UserClassConfig& u, const std::string& path) {
  if (u.action_set_dbm.empty()) {
    throw ConfigError(path + ".action_set_dbm", "must not be empty");
  }
  for (std::size_t k = 1; k < u.action_set_dbm.size(); ++k) {
    if (!(u.action_set_dbm[k] > u.action_set_dbm[k - 1])) {
      throw ConfigError(path + ".action_set_dbm", "must be strictly increasing");
    }
  }
}

}  // namespace

std::vector<Algorithm> ParseAlgorithmSelector(const std::string& name) {
  if (name == "all") {
    return {Algorithm::kRla1, Algorithm::kRla2, Algorithm::kNoncoop};
  }
  return {ParseAlgorithm(name)};
}

double ExperimentConfig::BeliefFactor(std::size_t follower) const {
  const auto& d = learning.belief_factors;
  return d.size() == 1 ? d[0] : d.at(follower);
}

void ExperimentConfig::Validate() const {
  try {
    network.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("network", e.what());
  }
  ValidateUserClass(macro, "users.macro");
  ValidateUserClass(femto, "users.femto");

  if (!(learning.alpha >= 0.0 && learning.alpha < 1.0)) {
    throw ConfigError("learning.alpha", "must be in [0, 1)");
  }
  if (learning.tau && !(*learning.tau > 0.0)) {
    throw ConfigError("learning.tau", "must be > 0 or \"auto\"");
  }
  if (!(learning.tau_scale > 0.0)) {
    throw ConfigError("learning.tau_scale", "must be > 0");
  }
  if (!(learning.tau_decay > 0.0 && learning.tau_decay <= 1.0)) {
    throw ConfigError("learning.tau_decay", "must be in (0, 1]");
  }
  if (!(learning.tau_min > 0.0)) {
    throw ConfigError("learning.tau_min", "must be > 0");
  }
  const auto& d = learning.belief_factors;
  if (d.size() != 1 &&
      d.size() != static_cast<std::size_t>(network.num_femtocells)) {
    throw ConfigError("learning.belief_factor",
                      "needs one value or one per femtocell");
  }
  for (double v : d) {
    if (!(v >= 0.0)) throw ConfigError("learning.belief_factor", "must be >= 0");
  }
  if (learning.num_steps < 1) {
    throw ConfigError("learning.num_steps", "must be >= 1");
  }
  if (learning.algorithms.empty()) {
    throw ConfigError("learning.algorithm", "no algorithm selected");
  }

  if (!(feasibility.reduction_factor > 0.0 && feasibility.reduction_factor < 1.0)) {
    throw ConfigError("feasibility.reduction_factor", "must be in (0, 1)");
  }
  if (feasibility.max_rounds < 0) {
    throw ConfigError("feasibility.max_rounds", "must be >= 0");
  }

  for (std::size_t k = 1; k < sweep.gamma0_db.size(); ++k) {
    if (!(sweep.gamma0_db[k] > sweep.gamma0_db[k - 1])) {
      throw ConfigError("sweep.gamma0_db", "must be strictly increasing");
    }
  }
  if (sweep.replicates < 1) throw ConfigError("sweep.replicates", "must be >= 1");
  if (seeds.replicates < 1) throw ConfigError("seeds.replicates", "must be >= 1");

  if (output.log_every < 1) throw ConfigError("output.log_every", "must be >= 1");
  if (output.dir.empty()) throw ConfigError("output.dir", "must not be empty");

  if (!(dynamics.step_size > 0.0)) {
    throw ConfigError("dynamics.step_size", "must be > 0");
  }
  if (dynamics.sample_every < 1) {
    throw ConfigError("dynamics.sample_every", "must be >= 1");
  }
}

ExperimentConfig ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }

  ExperimentConfig c;
  Section top(root, "");

  if (const json* n = top.Find("network")) {
    Section s(*n, "network");
    s.Number("bandwidth_hz", c.network.bandwidth_hz);
    double noise_dbm = WattToDbm(c.network.noise_power_w);
    if (s.Find("noise_power_dbm")) {
      s.Number("noise_power_dbm", noise_dbm);
      c.network.noise_power_w = DbmToWatt(noise_dbm);
    }
    s.Integer("num_femtocells", c.network.num_femtocells);
    s.Number("macro_radius_m", c.network.macro_radius_m);
    s.Number("femto_radius_m", c.network.femto_radius_m);
    s.Number("path_loss_exponent", c.network.path_loss_exponent);
    s.Integer("rng_seed", c.network.rng_seed);
    s.Number("min_distance_m", c.network.min_distance_m);
    s.Number("shadowing_sigma_db", c.network.shadowing_sigma_db);
    s.Finish();
  }

  if (const json* u = top.Find("users")) {
    Section s(*u, "users");
    if (const json* m = s.Find("macro")) ParseUserClass(*m, "users.macro", c.macro);
    if (const json* f = s.Find("femto")) ParseUserClass(*f, "users.femto", c.femto);
    s.Finish();
  }

  if (const json* l = top.Find("learning")) {
    Section s(*l, "learning");
    s.Number("alpha", c.learning.alpha);
    if (const json* tau = s.Find("tau")) {
      if (tau->is_string() && tau->get<std::string>() == "auto") {
        c.learning.tau.reset();
      } else if (tau->is_number()) {
        c.learning.tau = tau->get<double>();
      } else {
        throw ConfigError("learning.tau", "expected a number or \"auto\"");
      }
    }
    s.Number("tau_scale", c.learning.tau_scale);
    s.Number("tau_decay", c.learning.tau_decay);
    s.Number("tau_min", c.learning.tau_min);
    if (const json* d = s.Find("belief_factor")) {
      if (d->is_number()) {
        c.learning.belief_factors = {d->get<double>()};
      } else {
        s.NumberList("belief_factor", c.learning.belief_factors);
      }
    }
    s.Integer("num_steps", c.learning.num_steps);
    std::string algo;
    s.String("algorithm", algo);
    if (!algo.empty()) {
      try {
        c.learning.algorithms = ParseAlgorithmSelector(algo);
      } catch (const std::invalid_argument&) {
        throw ConfigError("learning.algorithm", "unknown algorithm '" + algo + "'");
      }
    }
    s.Finish();
  }

  if (const json* f = top.Find("feasibility")) {
    Section s(*f, "feasibility");
    s.Bool("enabled", c.feasibility.enabled);
    s.Number("reduction_factor", c.feasibility.reduction_factor);
    s.Integer("max_rounds", c.feasibility.max_rounds);
    s.Bool("deactivate", c.feasibility.deactivate);
    s.Finish();
  }

  if (const json* w = top.Find("sweep")) {
    Section s(*w, "sweep");
    s.NumberList("gamma0_db", c.sweep.gamma0_db);
    s.Integer("replicates", c.sweep.replicates);
    s.Finish();
  }

  if (const json* e = top.Find("seeds")) {
    Section s(*e, "seeds");
    s.Integer("base", c.seeds.base);
    s.Integer("replicates", c.seeds.replicates);
    s.Finish();
  }

  if (const json* o = top.Find("output")) {
    Section s(*o, "output");
    s.String("dir", c.output.dir);
    s.Integer("log_every", c.output.log_every);
    s.Bool("emit_trace", c.output.emit_trace);
    s.Bool("emit_summary", c.output.emit_summary);
    s.Bool("emit_instance", c.output.emit_instance);
    s.Finish();
  }

  if (const json* d = top.Find("dynamics")) {
    Section s(*d, "dynamics");
    s.Number("step_size", c.dynamics.step_size);
    s.Integer("sample_every", c.dynamics.sample_every);
    s.Finish();
  }

  top.Finish();
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

}  // namespace femtolearn
