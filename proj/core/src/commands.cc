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

#include "subzero/commands.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "subzero/error.h"
#include "subzero/io.h"
#include "subzero/oracles.h"

namespace subzero {
namespace {

std::filesystem::path BaseDir(const std::filesystem::path& config_path) {
  return config_path.has_parent_path() ? config_path.parent_path()
                                       : std::filesystem::path(".");
}

void ApplyOverrides(RunConfig& config, const CommandOverrides& o) {
  if (o.metrics) config.metrics = *o.metrics;
  if (o.trace) config.trace = *o.trace;
  if (o.certificate) config.certificate = *o.certificate;
  if (o.seed) config.seed = *o.seed;
  if (o.horizon) config.horizon = *o.horizon;
  ValidateConfig(config);
}

struct RunSummary {
  std::array<double, 2> mean_regret = {NAN, NAN};
  double mean_gap = NAN;
};

RunSummary Summarize(const SimulationTrace& trace) {
  RunSummary s;
  if (trace.metrics.empty()) return s;
  const int last = trace.metrics.back().t;
  std::array<double, 2> regret_sum = {0.0, 0.0};
  std::array<int, 2> regret_count = {0, 0};
  double gap_sum = 0.0;
  int gap_count = 0;
  for (const MetricRow& r : trace.metrics) {
    if (r.t != last) continue;
    const int l = SideIndex(r.side);
    if (r.avg_regret) {
      regret_sum[l] += *r.avg_regret;
      ++regret_count[l];
    }
    if (r.gap_avg) {
      gap_sum += *r.gap_avg;
      ++gap_count;
    }
  }
  for (int l = 0; l < 2; ++l) {
    if (regret_count[l] > 0) s.mean_regret[l] = regret_sum[l] / regret_count[l];
  }
  if (gap_count > 0) s.mean_gap = gap_sum / gap_count;
  return s;
}

SimulationTrace Execute(const RunConfig& config,
                        const std::filesystem::path& base_dir) {
  const Experiment experiment = BuildExperiment(config, base_dir);
  const RunOptions options = MakeRunOptions(config, experiment, base_dir);
  return Run(experiment.game, experiment.geometry, experiment.schedule,
             experiment.steps, options);
}

std::string SweepLabel(double value) { return fmt::format("{:.6g}", value); }

}  // namespace

int GuardedCommand(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CertificateError& e) {
    err << "error: " << e.what() << " (best gap " << FormatNumber(e.best_gap())
        << ")\n";
    return kExitCapability;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapability;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCapability;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    // Config, parameter, connectivity and input validation failures.
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

RunOptions MakeRunOptions(const RunConfig& config, const Experiment& experiment,
                          const std::filesystem::path& base_dir) {
  RunOptions options;
  options.horizon = config.horizon;
  options.metric_stride = config.stride;
  options.snapshot_stride = config.trace.empty() ? 0 : config.snapshot_stride;
  options.compute_regret = config.compute_regret;
  options.compute_gap = config.compute_gap;
  options.record_consensus = false;
  options.init = experiment.init;
  options.oracle_seed = config.seed;
  if (!config.reference.empty()) {
    std::filesystem::path path = config.reference;
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    const NeCertificate c = LoadCertificate(path);
    options.ne_point = std::array<Vector, 2>{c.x1, c.x2};
  }
  return options;
}

int CmdRun(const std::filesystem::path& config_path,
           const CommandOverrides& overrides, std::ostream& out,
           std::ostream& err) {
  return GuardedCommand(
      [&] {
        RunConfig config = LoadConfig(config_path);
        ApplyOverrides(config, overrides);
        const SimulationTrace trace = Execute(config, BaseDir(config_path));
        WriteTextFile(config.metrics, FormatMetricsCsv(trace.metrics));
        if (!config.trace.empty()) {
          WriteTextFile(config.trace, FormatTraceJsonl(trace));
        }
        const RunSummary s = Summarize(trace);
        out << fmt::format("preset {} horizon {} seed {}\n", config.preset,
                           config.horizon, config.seed);
        out << fmt::format("final avg regret: side1 {} side2 {}\n",
                           FormatNumber(s.mean_regret[0]),
                           FormatNumber(s.mean_regret[1]));
        out << fmt::format("final gap of averages: {}\n", FormatNumber(s.mean_gap));
        out << "metrics: " << config.metrics << '\n';
        if (!config.trace.empty()) out << "trace: " << config.trace << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

int CmdSolveNe(const std::filesystem::path& config_path,
               const CommandOverrides& overrides, std::ostream& out,
               std::ostream& err) {
  return GuardedCommand(
      [&] {
        RunConfig config = LoadConfig(config_path);
        ApplyOverrides(config, overrides);
        const Experiment experiment =
            BuildExperiment(config, BaseDir(config_path));
        NeSolverOptions options;
        options.tolerance = config.solver_tolerance;
        options.max_iterations = config.solver_max_iterations;
        const NeCertificate c =
            SolveNeCentralized(experiment.game, experiment.geometry, options);
        WriteTextFile(config.certificate, FormatCertificate(c));
        out << fmt::format("value {}\ngap {}\niterations {}\ncertificate: {}\n",
                           FormatNumber(c.value), FormatNumber(c.gap),
                           c.iterations, config.certificate);
        return static_cast<int>(kExitOk);
      },
      err);
}

int CmdValidate(const std::filesystem::path& config_path, std::ostream& out,
                std::ostream& err) {
  return GuardedCommand(
      [&] {
        const RunConfig config = LoadConfig(config_path);
        const Experiment e = BuildExperiment(config, BaseDir(config_path));
        out << fmt::format(
            "ok: {} with {}+{} agents, {} and {} actions, pools of {} and {} "
            "graphs, eta {}\n",
            config.preset, e.game.num_agents(Side::kOne),
            e.game.num_agents(Side::kTwo), e.game.domain(Side::kOne).dim(),
            e.game.domain(Side::kTwo).dim(), e.graphs[0].size(),
            e.graphs[1].size(), FormatNumber(e.schedule.eta()));
        return static_cast<int>(kExitOk);
      },
      err);
}

int CmdSweep(const std::filesystem::path& config_path, const SweepSpec& spec,
             const CommandOverrides& overrides, std::ostream& out,
             std::ostream& err) {
  return GuardedCommand(
      [&] {
        if (spec.parameter != "kappa" && spec.parameter != "lambda2") {
          throw ConfigError(fmt::format(
              "sweep parameter '{}' is neither kappa nor lambda2",
              spec.parameter));
        }
        if (spec.values.empty()) throw ConfigError("sweep list is empty");
        RunConfig base = LoadConfig(config_path);
        ApplyOverrides(base, overrides);
        // Parse and validate every point before running any of them.
        std::vector<std::pair<double, RunConfig>> points;
        for (const std::string& text : spec.values) {
          const double value = ParseNumberOrFraction(text);
          RunConfig c = base;
          if (spec.parameter == "kappa") {
            c.step_kind = "power";
            c.kappa = value;
          } else {
            c.network1.kind = "lambda2";
            c.network1.lambda2 = value;
          }
          ValidateConfig(c);
          points.emplace_back(value, std::move(c));
        }
        const std::string stem = config_path.stem().string();
        std::string combined = spec.parameter + "," + std::string(kMetricsHeader) + "\n";
        for (auto& [value, config] : points) {
          const std::string label = SweepLabel(value);
          const std::filesystem::path file =
              spec.out_dir / fmt::format("{}_{}={}_seed{}.csv", stem,
                                         spec.parameter, label, config.seed);
          config.metrics = file.string();
          const SimulationTrace trace = Execute(config, BaseDir(config_path));
          const std::string csv = FormatMetricsCsv(trace.metrics);
          WriteTextFile(file, csv);
          std::istringstream rows(csv);
          std::string line;
          std::getline(rows, line);  // header
          while (std::getline(rows, line)) combined += label + "," + line + "\n";
          const RunSummary s = Summarize(trace);
          out << fmt::format("{}={} final avg regret side1 {} side2 {} -> {}\n",
                             spec.parameter, label, FormatNumber(s.mean_regret[0]),
                             FormatNumber(s.mean_regret[1]), file.string());
        }
        const std::filesystem::path comparison =
            spec.out_dir /
            fmt::format("{}_{}_comparison.csv", stem, spec.parameter);
        WriteTextFile(comparison, combined);
        out << "comparison: " << comparison.string() << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

int CmdPlotdata(const PlotdataOptions& options, std::ostream& out,
                std::ostream& err) {
  return GuardedCommand(
      [&] {
        if (options.files.empty()) throw ConfigError("no metric files given");
        if (options.metrics.empty()) throw ConfigError("no metrics requested");
        std::string text = "series_label,t,value\n";
        for (const std::filesystem::path& file : options.files) {
          const CsvTable table = ReadCsv(file);
          const int t_col = table.Column("t");
          const int side_col = table.Column("side");
          const int agent_col = table.Column("agent");
          if (t_col < 0 || side_col < 0 || agent_col < 0) {
            throw ConfigError(fmt::format(
                "{}: missing t, side or agent column", file.string()));
          }
          std::vector<int> metric_cols;
          for (const std::string& m : options.metrics) {
            const int col = table.Column(m);
            if (col < 0) {
              throw ConfigError(
                  fmt::format("{}: missing column '{}'", file.string(), m));
            }
            metric_cols.push_back(col);
          }
          auto wanted = [](const std::vector<int>& filter, const std::string& v) {
            if (filter.empty()) return true;
            const int k = std::stoi(v);
            return std::find(filter.begin(), filter.end(), k) != filter.end();
          };
          const std::string stem = file.stem().string();
          for (std::size_t m = 0; m < metric_cols.size(); ++m) {
            for (const auto& row : table.rows) {
              if (!wanted(options.sides, row[side_col]) ||
                  !wanted(options.agents, row[agent_col])) {
                continue;
              }
              const std::string& value = row[metric_cols[m]];
              if (value.empty()) continue;
              text += fmt::format("{}/s{}a{}/{},{},{}\n", stem, row[side_col],
                                  row[agent_col], options.metrics[m],
                                  row[t_col], value);
            }
          }
        }
        if (options.output) {
          WriteTextFile(*options.output, text);
        } else {
          out << text;
        }
        return static_cast<int>(kExitOk);
      },
      err);
}

}  // namespace subzero
