// Copyright 2026 The Subzero Authors
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

#ifndef SUBZERO_COMMANDS_H_
#define SUBZERO_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subzero/config.h"
#include "subzero/engine.h"
#include "subzero/presets.h"

namespace subzero {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitCapability = 3,
  kExitInternal = 4,
};

// Runs `body`, mapping library exceptions to exit codes and printing the
// message to err.
int GuardedCommand(const std::function<int()>& body, std::ostream& err);

// Run options implied by a config. Relative reference paths resolve
// against base_dir.
RunOptions MakeRunOptions(const RunConfig& config, const Experiment& experiment,
                          const std::filesystem::path& base_dir = {});

struct CommandOverrides {
  std::optional<std::string> metrics;
  std::optional<std::string> trace;
  std::optional<std::string> certificate;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
};

int CmdRun(const std::filesystem::path& config_path,
           const CommandOverrides& overrides, std::ostream& out,
           std::ostream& err);

int CmdSolveNe(const std::filesystem::path& config_path,
               const CommandOverrides& overrides, std::ostream& out,
               std::ostream& err);

int CmdValidate(const std::filesystem::path& config_path, std::ostream& out,
                std::ostream& err);

struct SweepSpec {
  // "kappa" or "lambda2" (the side-one network).
  std::string parameter;
  std::vector<std::string> values;
  std::filesystem::path out_dir = ".";
};

int CmdSweep(const std::filesystem::path& config_path, const SweepSpec& spec,
             const CommandOverrides& overrides, std::ostream& out,
             std::ostream& err);

struct PlotdataOptions {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> metrics = {"avg_regret", "gap_avg", "dist_to_ne"};
  // Empty keeps every side / agent.
  std::vector<int> sides;
  std::vector<int> agents;
  std::optional<std::filesystem::path> output;
};

int CmdPlotdata(const PlotdataOptions& options, std::ostream& out,
                std::ostream& err);

}  // namespace subzero

#endif  // SUBZERO_COMMANDS_H_
