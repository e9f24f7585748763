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

#include "subzero/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "subzero/error.h"
#include "subzero/steps.h"

namespace subzero {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& Schema() {
  static const auto* schema = new std::map<std::string, std::set<std::string>>{
      {"game", {"preset", "agents", "paths", "arcs", "matrix", "init1", "init2"}},
      {"geometry", {"side1", "side2"}},
      {"network",
       {"side1", "side2", "pool_size", "edge_prob", "lambda2_side1",
        "lambda2_side2", "lambda2_tolerance", "file_side1", "file_side2",
        "cross"}},
      {"steps", {"kind", "kappa", "alpha"}},
      {"run",
       {"horizon", "seed", "stride", "snapshot_stride", "compute_regret",
        "compute_gap", "reference"}},
      {"output", {"metrics", "trace", "certificate"}},
      {"solver", {"tolerance", "max_iterations"}},
  };
  return *schema;
}

const std::set<std::string> kPresets = {"interdiction-desk",
                                        "interdiction-paper", "power-allocation",
                                        "matching-pennies", "matrix"};
const std::set<std::string> kNetworkKinds = {
    "random-pool", "ring", "complete", "path", "star", "lambda2", "file"};

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double ParseDouble(std::string_view text, std::string_view key) {
  const std::string t = Trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
      !std::isfinite(value)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, t));
  }
  return value;
}

long long ParseInteger(std::string_view text, std::string_view key) {
  const std::string t = Trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, t));
  }
  return value;
}

int ParseInt(std::string_view text, std::string_view key) {
  const long long v = ParseInteger(text, key);
  if (v < -2147483647LL || v > 2147483647LL) {
    throw ConfigError(fmt::format("{}: {} is out of range", key, v));
  }
  return static_cast<int>(v);
}

bool ParseBool(std::string_view text, std::string_view key) {
  const std::string t = Trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, t));
}

std::vector<double> ParseList(std::string_view text, std::string_view key) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) out.push_back(ParseDouble(item, key));
  return out;
}

// Action counts (side one, side two) implied by the game keys.
std::pair<int, int> ActionCounts(const RunConfig& c) {
  if (c.preset == "power-allocation") return {3, 3};
  if (c.preset == "matching-pennies") return {2, 2};
  if (c.preset == "matrix") {
    int rows = 0;
    int cols = -1;
    std::string row;
    std::istringstream in(c.matrix);
    while (std::getline(in, row, ';')) {
      const int n = static_cast<int>(ParseList(row, "game.matrix").size());
      if (cols >= 0 && n != cols) {
        throw ConfigError("game.matrix: rows have different lengths");
      }
      cols = n;
      ++rows;
    }
    if (rows == 0 || cols <= 0) throw ConfigError("game.matrix is empty");
    return {rows, cols};
  }
  return {c.paths, c.arcs};
}

void ValidateInit(const std::string& text, int dim, bool entropy,
                  std::string_view key) {
  if (Trim(text).empty()) return;
  const std::vector<double> x = ParseList(text, key);
  if (static_cast<int>(x.size()) != dim) {
    throw ConfigError(
        fmt::format("{}: expected {} entries, got {}", key, dim, x.size()));
  }
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0 || (entropy && v <= 0.0)) {
      throw ConfigError(fmt::format(
          "{}: entries must be {}", key,
          entropy ? "strictly positive under entropy geometry" : "nonnegative"));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError(fmt::format("{}: entries sum to {}, not 1", key, sum));
  }
}

void ApplyPresetDefaults(RunConfig& c) {
  const std::string preset = c.preset;
  c = RunConfig{};
  c.preset = preset;
  if (preset == "interdiction-paper") {
    c.agents = 10;
    c.paths = 30;
    c.arcs = 60;
  } else if (preset == "power-allocation") {
    c.agents = 6;
    c.network1.kind = c.network2.kind = "ring";
    c.cross = "uniform";
  } else if (preset == "matching-pennies" || preset == "matrix") {
    c.agents = 1;
    c.network1.kind = c.network2.kind = "complete";
    c.kappa = 0.6;
  }
}

std::string FormatDouble(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

double ParseNumberOrFraction(std::string_view text) {
  const std::string t = Trim(text);
  const auto slash = t.find('/');
  if (slash == std::string::npos) return ParseDouble(t, "number");
  const double num = ParseDouble(t.substr(0, slash), "numerator");
  const double den = ParseDouble(t.substr(slash + 1), "denominator");
  if (den == 0.0) throw ConfigError(fmt::format("'{}' divides by zero", t));
  return num / den;
}

void ValidateConfig(const RunConfig& c) {
  if (!kPresets.count(c.preset)) {
    throw ConfigError(fmt::format("game.preset: unknown preset '{}'", c.preset));
  }
  if (c.agents < 1) throw ConfigError("game.agents must be at least 1");
  if (c.preset == "power-allocation" && c.agents != 6) {
    throw ConfigError("game.agents: the power-allocation game has 6 agents");
  }
  if (c.paths < 1 || c.arcs < 1) {
    throw ConfigError("game.paths and game.arcs must be at least 1");
  }
  if (c.preset == "matrix" && Trim(c.matrix).empty()) {
    throw ConfigError("game.matrix is required by the matrix preset");
  }
  for (const auto& [key, value] :
       {std::pair{"geometry.side1", c.geometry1}, {"geometry.side2", c.geometry2}}) {
    if (value != "entropy" && value != "euclidean") {
      throw ConfigError(fmt::format(
          "{}: '{}' is neither 'entropy' nor 'euclidean'", key, value));
    }
  }
  const auto [m1, m2] = ActionCounts(c);
  ValidateInit(c.init1, m1, c.geometry1 == "entropy", "game.init1");
  ValidateInit(c.init2, m2, c.geometry2 == "entropy", "game.init2");

  for (int l = 1; l <= 2; ++l) {
    const NetworkSideConfig& n = l == 1 ? c.network1 : c.network2;
    if (!kNetworkKinds.count(n.kind)) {
      throw ConfigError(
          fmt::format("network.side{}: unknown network kind '{}'", l, n.kind));
    }
    if (n.kind == "lambda2") {
      if (!(n.lambda2 > 0.0) || n.lambda2 > c.agents) {
        throw ConfigError(fmt::format(
            "network.lambda2_side{}: {} is outside (0, {}] for {} agents", l,
            n.lambda2, c.agents, c.agents));
      }
    }
    if (n.kind == "file" && Trim(n.file).empty()) {
      throw ConfigError(fmt::format("network.file_side{} is required", l));
    }
  }
  if (c.pool_size < 1) throw ConfigError("network.pool_size must be >= 1");
  if (!(c.edge_prob >= 0.0 && c.edge_prob <= 1.0)) {
    throw ConfigError("network.edge_prob must lie in [0, 1]");
  }
  if (!(c.lambda2_tolerance > 0.0)) {
    throw ConfigError("network.lambda2_tolerance must be positive");
  }
  if (c.cross != "paired" && c.cross != "uniform") {
    throw ConfigError(fmt::format(
        "network.cross: '{}' is neither 'paired' nor 'uniform'", c.cross));
  }

  try {
    if (c.step_kind == "power") {
      (void)StepSchedule::Power(c.kappa);
    } else if (c.step_kind == "constant") {
      (void)StepSchedule::Constant(c.alpha);
    } else if (c.step_kind != "horizon") {
      throw ConfigError(fmt::format(
          "steps.kind: '{}' is not power, constant or horizon", c.step_kind));
    }
  } catch (const ParameterError& e) {
    throw ConfigError(fmt::format("steps: {}", e.what()));
  }

  if (c.horizon < 1) throw ConfigError("run.horizon must be at least 1");
  if (c.stride < 0) throw ConfigError("run.stride must be nonnegative");
  if (c.snapshot_stride < -1) {
    throw ConfigError("run.snapshot_stride must be -1 (auto) or more");
  }
  if (!(c.solver_tolerance > 0.0)) {
    throw ConfigError("solver.tolerance must be positive");
  }
  if (c.solver_max_iterations < 1) {
    throw ConfigError("solver.max_iterations must be at least 1");
  }
}

RunConfig ParseConfig(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("malformed config (line {}): {}", e.line(),
                                  e.message()));
  }
  const auto& schema = Schema();
  for (const auto& [section, body] : tree) {
    auto it = schema.find(section);
    if (it == schema.end()) {
      throw ConfigError(body.empty()
                            ? fmt::format("key '{}' outside any section", section)
                            : fmt::format("unknown section [{}]", section));
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError(
            fmt::format("unknown key '{}' in section [{}]", key, section));
      }
    }
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
      return Trim(*v);
    }
    return std::nullopt;
  };

  RunConfig c;
  if (auto v = get("game.preset")) c.preset = *v;
  if (!kPresets.count(c.preset)) {
    throw ConfigError(fmt::format("game.preset: unknown preset '{}'", c.preset));
  }
  ApplyPresetDefaults(c);

  if (auto v = get("game.agents")) c.agents = ParseInt(*v, "game.agents");
  if (auto v = get("game.paths")) c.paths = ParseInt(*v, "game.paths");
  if (auto v = get("game.arcs")) c.arcs = ParseInt(*v, "game.arcs");
  if (auto v = get("game.matrix")) c.matrix = *v;
  if (auto v = get("game.init1")) c.init1 = *v;
  if (auto v = get("game.init2")) c.init2 = *v;
  if (auto v = get("geometry.side1")) c.geometry1 = *v;
  if (auto v = get("geometry.side2")) c.geometry2 = *v;
  if (auto v = get("network.side1")) c.network1.kind = *v;
  if (auto v = get("network.side2")) c.network2.kind = *v;
  if (auto v = get("network.pool_size")) {
    c.pool_size = ParseInt(*v, "network.pool_size");
  }
  if (auto v = get("network.edge_prob")) {
    c.edge_prob = ParseDouble(*v, "network.edge_prob");
  }
  if (auto v = get("network.lambda2_side1")) {
    c.network1.lambda2 = ParseDouble(*v, "network.lambda2_side1");
  }
  if (auto v = get("network.lambda2_side2")) {
    c.network2.lambda2 = ParseDouble(*v, "network.lambda2_side2");
  }
  if (auto v = get("network.lambda2_tolerance")) {
    c.lambda2_tolerance = ParseDouble(*v, "network.lambda2_tolerance");
  }
  if (auto v = get("network.file_side1")) c.network1.file = *v;
  if (auto v = get("network.file_side2")) c.network2.file = *v;
  if (auto v = get("network.cross")) c.cross = *v;
  if (auto v = get("steps.kind")) c.step_kind = *v;
  if (auto v = get("steps.kappa")) {
    try {
      c.kappa = ParseNumberOrFraction(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("steps.kappa: {}", e.what()));
    }
  }
  if (auto v = get("steps.alpha")) c.alpha = ParseDouble(*v, "steps.alpha");
  if (auto v = get("run.horizon")) c.horizon = ParseInt(*v, "run.horizon");
  if (auto v = get("run.seed")) {
    const long long s = ParseInteger(*v, "run.seed");
    if (s < 0) throw ConfigError("run.seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("run.stride")) {
    c.stride = ParseInt(*v, "run.stride");
  } else {
    c.stride = std::max(1, c.horizon / 100);
  }
  if (auto v = get("run.snapshot_stride")) {
    c.snapshot_stride = ParseInt(*v, "run.snapshot_stride");
  }
  if (auto v = get("run.compute_regret")) {
    c.compute_regret = ParseBool(*v, "run.compute_regret");
  }
  if (auto v = get("run.compute_gap")) {
    c.compute_gap = ParseBool(*v, "run.compute_gap");
  }
  if (auto v = get("run.reference")) c.reference = *v;
  if (auto v = get("output.metrics")) c.metrics = *v;
  if (auto v = get("output.trace")) c.trace = *v;
  if (auto v = get("output.certificate")) c.certificate = *v;
  if (auto v = get("solver.tolerance")) {
    c.solver_tolerance = ParseDouble(*v, "solver.tolerance");
  }
  if (auto v = get("solver.max_iterations")) {
    c.solver_max_iterations = ParseInt(*v, "solver.max_iterations");
  }
  ValidateConfig(c);
  return c;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(fmt::format("cannot open config {}", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeConfig(const RunConfig& c) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
  out += "[game]\n";
  line("preset", c.preset);
  line("agents", std::to_string(c.agents));
  line("paths", std::to_string(c.paths));
  line("arcs", std::to_string(c.arcs));
  line("matrix", c.matrix);
  line("init1", c.init1);
  line("init2", c.init2);
  out += "\n[geometry]\n";
  line("side1", c.geometry1);
  line("side2", c.geometry2);
  out += "\n[network]\n";
  line("side1", c.network1.kind);
  line("side2", c.network2.kind);
  line("pool_size", std::to_string(c.pool_size));
  line("edge_prob", FormatDouble(c.edge_prob));
  line("lambda2_side1", FormatDouble(c.network1.lambda2));
  line("lambda2_side2", FormatDouble(c.network2.lambda2));
  line("lambda2_tolerance", FormatDouble(c.lambda2_tolerance));
  line("file_side1", c.network1.file);
  line("file_side2", c.network2.file);
  line("cross", c.cross);
  out += "\n[steps]\n";
  line("kind", c.step_kind);
  line("kappa", FormatDouble(c.kappa));
  line("alpha", FormatDouble(c.alpha));
  out += "\n[run]\n";
  line("horizon", std::to_string(c.horizon));
  line("seed", std::to_string(c.seed));
  line("stride", std::to_string(c.stride));
  line("snapshot_stride", std::to_string(c.snapshot_stride));
  line("compute_regret", flag(c.compute_regret));
  line("compute_gap", flag(c.compute_gap));
  line("reference", c.reference);
  out += "\n[output]\n";
  line("metrics", c.metrics);
  line("trace", c.trace);
  line("certificate", c.certificate);
  out += "\n[solver]\n";
  line("tolerance", FormatDouble(c.solver_tolerance));
  line("max_iterations", std::to_string(c.solver_max_iterations));
  return out;
}

}  // namespace subzero
