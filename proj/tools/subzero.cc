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

// Command-line entry point: run, solve-ne, sweep, plotdata, validate.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subzero/commands.h"

namespace {

void AddOverrides(CLI::App* cmd, subzero::CommandOverrides& o) {
  cmd->add_option("--metrics", o.metrics, "Metrics CSV output path");
  cmd->add_option("--trace", o.trace, "Trace JSONL output path");
  cmd->add_option("--certificate", o.certificate, "Certificate output path");
  cmd->add_option("--seed", o.seed, "Override the master seed");
  cmd->add_option("--horizon", o.horizon, "Override the number of rounds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed mirror descent in subnetwork zero-sum games"};
  app.require_subcommand(1);

  std::string config;
  subzero::CommandOverrides overrides;

  CLI::App* run = app.add_subcommand("run", "Simulate and write metrics");
  run->add_option("config", config, "INI config")->required();
  AddOverrides(run, overrides);

  CLI::App* solve = app.add_subcommand("solve-ne", "Certify an equilibrium");
  solve->add_option("config", config, "INI config")->required();
  AddOverrides(solve, overrides);

  subzero::SweepSpec sweep_spec;
  std::string kappa_list;
  std::string lambda2_list;
  bool kappa_given = false;
  bool lambda2_given = false;
  std::string out_dir = ".";
  CLI::App* sweep = app.add_subcommand("sweep", "Run one config over a list");
  sweep->add_option("config", config, "INI config")->required();
  auto* kappa_opt =
      sweep->add_option("--kappa", kappa_list, "Comma-separated kappa values");
  auto* lambda2_opt = sweep->add_option(
      "--lambda2", lambda2_list, "Comma-separated side-one lambda2 targets");
  kappa_opt->excludes(lambda2_opt);
  sweep->add_option("--out", out_dir, "Output directory");
  AddOverrides(sweep, overrides);

  subzero::PlotdataOptions plot;
  std::string plot_out;
  CLI::App* plotdata =
      app.add_subcommand("plotdata", "Long-format series from metric files");
  plotdata->add_option("files", plot.files, "Metric CSV files")->required();
  plotdata->add_option("--metrics", plot.metrics, "Columns to emit")
      ->delimiter(',');
  plotdata->add_option("--side", plot.sides, "Sides to keep")->delimiter(',');
  plotdata->add_option("--agent", plot.agents, "Agents to keep")->delimiter(',');
  plotdata->add_option("--out", plot_out, "Output file (default stdout)");

  CLI::App* validate = app.add_subcommand("validate", "Check a config");
  validate->add_option("config", config, "INI config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : subzero::kExitConfig;
  }

  if (*run) return subzero::CmdRun(config, overrides, std::cout, std::cerr);
  if (*solve) return subzero::CmdSolveNe(config, overrides, std::cout, std::cerr);
  if (*validate) return subzero::CmdValidate(config, std::cout, std::cerr);
  if (*sweep) {
    kappa_given = kappa_opt->count() > 0;
    lambda2_given = lambda2_opt->count() > 0;
    if (!kappa_given && !lambda2_given) {
      std::cerr << "error: sweep needs --kappa or --lambda2\n";
      return subzero::kExitConfig;
    }
    sweep_spec.parameter = kappa_given ? "kappa" : "lambda2";
    const std::string& list = kappa_given ? kappa_list : lambda2_list;
    std::string item;
    std::istringstream in(list);
    while (std::getline(in, item, ',')) {
      if (item.find_first_not_of(" \t") != std::string::npos) {
        sweep_spec.values.push_back(item);
      }
    }
    sweep_spec.out_dir = out_dir;
    return subzero::CmdSweep(config, sweep_spec, overrides, std::cout,
                             std::cerr);
  }
  if (*plotdata) {
    if (!plot_out.empty()) plot.output = plot_out;
    return subzero::CmdPlotdata(plot, std::cout, std::cerr);
  }
  return subzero::kExitInternal;
}
