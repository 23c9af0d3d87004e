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

#ifndef FEMTOLEARN_REPORT_H_
#define FEMTOLEARN_REPORT_H_

// Plain-text artifacts: CSV tables and the JSON instance dump. Reals are
// printed with 17 significant digits so that every file round-trips exactly
// and is byte-stable across runs.

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "femtolearn/experiment.h"

namespace femtolearn {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string FormatReal(double value);

// step,user,algo,action_idx,power_dbm,sinr_lin,utility,expected_utility,
// y_0,...,y_{m-1}; m is the largest action count, shorter rows are padded
// with empty fields. Rows are step-major, user-minor.
void WriteTraceCsv(std::ostream& out, const ExperimentInstance& instance,
                   const std::vector<AlgorithmRun>& runs);

// gamma0_db,algo,fu_index,expected_sinr_lin,expected_sinr_db,active
void WriteSweepCsv(std::ostream& out, const std::vector<SweepResult>& results);

// algo,user,terminal_expected_utility,ratio_to_complete_info,steps_to_within_10pct
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);

// step,time,user,y_0,...,y_{m-1}
void WriteDynamicsCsv(std::ostream& out, const ExperimentInstance& instance,
                      const std::vector<DynamicsState>& trajectory,
                      double step_size);

// Everything needed to recompute logged quantities: the active game, user
// ids, topology and protocol outcome.
std::string InstanceJson(const ExperimentInstance& instance);

struct SerializedInstance {
  GameInstance game;
  std::vector<std::size_t> user_ids;
};
SerializedInstance ParseInstanceJson(const std::string& text);

// SE profile and utilities plus the complete-information reference.
std::string OracleJson(const ExperimentInstance& instance,
                       const ReferenceLines& references);

// Creates parent directories; throws IoError naming the path.
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace femtolearn

#endif  // FEMTOLEARN_REPORT_H_
