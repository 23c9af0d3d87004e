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

// femtolearn command-line driver.
//
//   femtolearn run      --config C [--seed S] [--algo rla1|rla2|noncoop|all] [--out D]
//   femtolearn sweep    --config C --param gamma0 --from DB --to DB --points K
//                       --replicates R [--seed S] [--out D]
//   femtolearn oracle   --config C
//   femtolearn dynamics --config C --steps K [--out D]
//
// Exit codes: 0 ok, 1 configuration/usage error, 2 macrocell infeasible after
// the feasibility protocol, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "femtolearn/config.h"
#include "femtolearn/dynamics.h"
#include "femtolearn/experiment.h"
#include "femtolearn/report.h"

namespace {

using namespace femtolearn;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

std::string JoinPath(const std::string& dir, const std::string& file) {
  return dir.empty() || dir.back() == '/' ? dir + file : dir + "/" + file;
}

template <typename Writer>
void WriteCsv(const std::string& path, Writer&& writer) {
  std::ostringstream out;
  writer(out);
  WriteFile(path, out.str());
}

int Run(const std::string& config_path, std::optional<std::uint64_t> seed,
        const std::string& algo, const std::string& out_dir) {
  ExperimentConfig config = LoadConfig(config_path);
  if (seed) config.seeds.base = *seed;
  if (!algo.empty()) {
    try {
      config.learning.algorithms = ParseAlgorithmSelector(algo);
    } catch (const std::invalid_argument&) {
      throw ConfigError("--algo", "unknown algorithm '" + algo + "'");
    }
  }
  if (!out_dir.empty()) config.output.dir = out_dir;

  ExperimentInstance instance = BuildInstance(config);
  RequireFeasible(config, instance);
  const ExperimentResult result = RunExperiment(config, std::move(instance), 0);
  const auto summary =
      CompareSummary(result.runs, result.references, result.instance);

  const std::string& dir = config.output.dir;
  if (config.output.emit_trace) {
    WriteCsv(JoinPath(dir, "trace.csv"), [&](std::ostream& out) {
      WriteTraceCsv(out, result.instance, result.runs);
    });
  }
  if (config.output.emit_summary) {
    WriteCsv(JoinPath(dir, "summary.csv"),
             [&](std::ostream& out) { WriteSummaryCsv(out, summary); });
    WriteFile(JoinPath(dir, "oracle.json"),
              OracleJson(result.instance, result.references));
  }
  if (config.output.emit_instance) {
    WriteFile(JoinPath(dir, "instance.json"), InstanceJson(result.instance));
  }
  WriteSummaryCsv(std::cout, summary);
  return kExitOk;
}

int Sweep(const std::string& config_path, const std::string& param, double from,
          double to, int points, int replicates, std::optional<std::uint64_t> seed,
          const std::string& out_dir) {
  ExperimentConfig config = LoadConfig(config_path);
  if (param != "gamma0") throw ConfigError("--param", "only gamma0 is supported");
  if (points < 1) throw ConfigError("--points", "must be >= 1");
  if (points > 1 && !(to > from)) {
    throw ConfigError("--to", "must exceed --from for more than one point");
  }
  config.sweep.gamma0_db.clear();
  for (int k = 0; k < points; ++k) {
    config.sweep.gamma0_db.push_back(
        points == 1 ? from : from + (to - from) * k / (points - 1));
  }
  config.sweep.replicates = replicates;
  if (seed) config.seeds.base = *seed;
  if (!out_dir.empty()) config.output.dir = out_dir;
  config.Validate();

  const auto results = SweepGamma0(config);
  const std::string path = JoinPath(config.output.dir, "sweep.csv");
  WriteCsv(path, [&](std::ostream& out) { WriteSweepCsv(out, results); });
  std::cout << "wrote " << path << '\n';
  return kExitOk;
}

int Oracle(const std::string& config_path) {
  const ExperimentConfig config = LoadConfig(config_path);
  const ExperimentInstance instance = BuildInstance(config);
  RequireFeasible(config, instance);
  std::cout << OracleJson(instance, ComputeReferences(instance));
  return kExitOk;
}

int Dynamics(const std::string& config_path, long steps, const std::string& out_dir) {
  ExperimentConfig config = LoadConfig(config_path);
  if (steps < 0) throw ConfigError("--steps", "must be >= 0");
  if (!out_dir.empty()) config.output.dir = out_dir;
  const ExperimentInstance instance = BuildInstance(config);
  RequireFeasible(config, instance);

  const auto trajectory = RunDynamics(config, instance, steps);
  const std::string path = JoinPath(config.output.dir, "dynamics.csv");
  WriteCsv(path, [&](std::ostream& out) {
    WriteDynamicsCsv(out, instance, trajectory, DynamicsStepSize(config));
  });
  const auto report =
      StationarityCheck(trajectory.back().profile, instance.normalized,
                        MakeDynamicsParams(config, instance), 1e-2);
  std::cout << "wrote " << path << "\nfinal residual "
            << FormatReal(report.residual) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leader/follower power-control learning experiments"};
  app.require_subcommand(1);

  std::string config_path, algo, out_dir, param = "gamma0";
  std::optional<std::uint64_t> seed;
  double from = 0.0, to = 0.0;
  int points = 0, replicates = 1;
  long steps = 0;

  auto* run = app.add_subcommand("run", "learning runs with trace and summary");
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--seed", seed, "base learning seed");
  run->add_option("--algo", algo, "rla1|rla2|noncoop|all");
  run->add_option("--out", out_dir, "output directory");

  auto* sweep = app.add_subcommand("sweep", "MU SINR-target sweep");
  sweep->add_option("--config", config_path, "JSON config")->required();
  sweep->add_option("--param", param, "swept parameter (gamma0)")->required();
  sweep->add_option("--from", from, "first value, dB")->required();
  sweep->add_option("--to", to, "last value, dB")->required();
  sweep->add_option("--points", points, "grid size")->required();
  sweep->add_option("--replicates", replicates, "seeds per point")->required();
  sweep->add_option("--seed", seed, "base learning seed");
  sweep->add_option("--out", out_dir, "output directory");

  auto* oracle = app.add_subcommand("oracle", "print the Stackelberg equilibrium");
  oracle->add_option("--config", config_path, "JSON config")->required();

  auto* dynamics = app.add_subcommand("dynamics", "integrate the strategy ODE");
  dynamics->add_option("--config", config_path, "JSON config")->required();
  dynamics->add_option("--steps", steps, "integration steps")->required();
  dynamics->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return Run(config_path, seed, algo, out_dir);
    if (*sweep) {
      return Sweep(config_path, param, from, to, points, replicates, seed, out_dir);
    }
    if (*oracle) return Oracle(config_path);
    if (*dynamics) return Dynamics(config_path, steps, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
