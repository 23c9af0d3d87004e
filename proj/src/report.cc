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

#include "femtolearn/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "femtolearn/units.h"

namespace femtolearn {
namespace {

using nlohmann::json;

std::size_t MaxActions(const GameInstance& game) {
  std::size_t m = 0;
  for (const UserParams& u : game.users()) m = std::max(m, u.action_set.size());
  return m;
}

void WriteProbabilityColumns(std::ostream& out, const Strategy& s, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    out << ',';
    if (j < s.size()) out << FormatReal(s[j]);
  }
}

std::string ProbabilityHeader(std::size_t m) {
  std::string h;
  for (std::size_t j = 0; j < m; ++j) h += ",y_" + std::to_string(j);
  return h;
}

json JointActionJson(const ExperimentInstance& instance, const JointAction& a) {
  json users = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    users.push_back({{"user", instance.user_ids[i]},
                     {"action_idx", a[i]},
                     {"power_dbm", WattToDbm(instance.game.user(i).action_set[a[i]])}});
  }
  return users;
}

}  // namespace

std::string FormatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void WriteTraceCsv(std::ostream& out, const ExperimentInstance& instance,
                   const std::vector<AlgorithmRun>& runs) {
  const GameInstance& game = instance.game;
  const std::size_t m = MaxActions(game);
  out << "step,user,algo,action_idx,power_dbm,sinr_lin,utility,expected_utility"
      << ProbabilityHeader(m) << '\n';
  for (const AlgorithmRun& run : runs) {
    const std::string algo = AlgorithmName(run.algorithm);
    for (const TraceRecord& record : run.records) {
      for (std::size_t i = 0; i < record.users.size(); ++i) {
        const UserStepRecord& u = record.users[i];
        out << record.step << ',' << instance.user_ids[i] << ',' << algo << ','
            << u.action << ','
            << FormatReal(WattToDbm(game.user(i).action_set[u.action])) << ','
            << FormatReal(u.sinr) << ',' << FormatReal(u.realized_utility) << ','
            << FormatReal(u.expected_utility);
        WriteProbabilityColumns(out, u.strategy, m);
        out << '\n';
      }
    }
  }
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepResult>& results) {
  out << "gamma0_db,algo,fu_index,expected_sinr_lin,expected_sinr_db,active\n";
  for (const SweepResult& r : results) {
    for (std::size_t k = 0; k < r.expected_sinr.size(); ++k) {
      out << FormatReal(r.gamma0_db) << ',' << AlgorithmName(r.algorithm) << ','
          << k + 1 << ',' << FormatReal(r.expected_sinr[k]) << ','
          << FormatReal(LinearToDb(r.expected_sinr[k])) << ','
          << (r.active[k] ? 1 : 0) << '\n';
    }
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "algo,user,terminal_expected_utility,ratio_to_complete_info,"
         "steps_to_within_10pct\n";
  for (const SummaryRow& r : rows) {
    out << r.algo << ',' << r.user << ',' << FormatReal(r.terminal_expected_utility)
        << ',' << FormatReal(r.ratio_to_reference) << ',';
    if (r.steps_to_threshold >= 0) out << r.steps_to_threshold;
    out << '\n';
  }
}

void WriteDynamicsCsv(std::ostream& out, const ExperimentInstance& instance,
                      const std::vector<DynamicsState>& trajectory,
                      double step_size) {
  const std::size_t m = MaxActions(instance.game);
  out << "step,time,user" << ProbabilityHeader(m) << '\n';
  for (const DynamicsState& state : trajectory) {
    const long step = std::lround(state.time / step_size);
    for (std::size_t i = 0; i < state.profile.size(); ++i) {
      out << step << ',' << FormatReal(state.time) << ',' << instance.user_ids[i];
      WriteProbabilityColumns(out, state.profile[i], m);
      out << '\n';
    }
  }
}

std::string InstanceJson(const ExperimentInstance& instance) {
  const GameInstance& game = instance.game;
  json gains = json::array();
  for (std::size_t i = 0; i < game.num_users(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < game.num_users(); ++j) row.push_back(game.gain(i, j));
    gains.push_back(row);
  }
  json users = json::array();
  for (const UserParams& u : game.users()) {
    users.push_back({{"sinr_target_lin", u.sinr_target_lin},
                     {"circuit_power_w", u.circuit_power_w},
                     {"action_set_w", std::vector<double>(u.action_set.levels().begin(),
                                                          u.action_set.levels().end())}});
  }
  json positions = json::array();
  for (std::size_t i = 0; i < instance.topology.num_users(); ++i) {
    const Point& bs = instance.topology.bs_positions[i];
    const Point& user = instance.topology.user_positions[i];
    positions.push_back({{"bs", {bs.x, bs.y}}, {"user", {user.x, user.y}}});
  }
  json doc = {
      {"bandwidth_hz", game.bandwidth_hz()},
      {"noise_power_w", game.noise_power_w()},
      {"user_ids", instance.user_ids},
      {"gains_from_user_to_bs", gains},
      {"users", users},
      {"topology", positions},
      {"follower_active", instance.follower_active},
      {"target_reductions", instance.target_reductions},
      {"macro_feasible", instance.macro_feasible},
      {"fingerprint", InstanceFingerprint(game)},
  };
  return doc.dump(2) + "\n";
}

SerializedInstance ParseInstanceJson(const std::string& text) {
  const json doc = json::parse(text);
  const auto& rows = doc.at("gains_from_user_to_bs");
  const std::size_t n = rows.size();
  SquareMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = rows.at(i).at(j).get<double>();
  }
  std::vector<UserParams> users;
  for (const json& u : doc.at("users")) {
    users.push_back({u.at("sinr_target_lin").get<double>(),
                     u.at("circuit_power_w").get<double>(),
                     ActionSet(u.at("action_set_w").get<std::vector<double>>())});
  }
  return SerializedInstance{
      GameInstance(GainMatrix{h}, std::move(users),
                   doc.at("bandwidth_hz").get<double>(),
                   doc.at("noise_power_w").get<double>()),
      doc.at("user_ids").get<std::vector<std::size_t>>()};
}

std::string OracleJson(const ExperimentInstance& instance,
                       const ReferenceLines& references) {
  const EquilibriumResult& se = references.oracle;
  json candidates = json::array();
  for (const LeaderCandidate& c : se.candidates) {
    candidates.push_back({{"leader_action_idx", c.leader_action},
                          {"followers", JointActionJson(instance, c.profile)},
                          {"leader_utility", c.leader_utility},
                          {"pure_nash", c.pure_nash}});
  }
  json doc = {
      {"stackelberg",
       {{"profile", JointActionJson(instance, se.profile())},
        {"utilities", se.utilities},
        {"is_pure_se", se.is_pure_se},
        {"candidates", candidates}}},
      {"complete_information",
       {{"profile", JointActionJson(instance, references.complete_info.profile)},
        {"utilities", references.complete_info_utilities},
        {"converged", references.complete_info.converged},
        {"sweeps", references.complete_info.sweeps},
        {"cycle_length", references.complete_info.cycle.size()}}},
      {"user_ids", instance.user_ids},
      {"follower_active", instance.follower_active},
      {"macro_feasible", instance.macro_feasible},
  };
  return doc.dump(2) + "\n";
}

void WriteFile(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory for '" + path + "': " + ec.message());
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace femtolearn
