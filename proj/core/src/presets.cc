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

#include "subzero/presets.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "subzero/error.h"

namespace subzero {
namespace {

std::vector<double> SplitNumbers(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    out.push_back(ParseNumberOrFraction(item));
  }
  return out;
}

Vector ParsePoint(std::string_view text) {
  const std::vector<double> values = SplitNumbers(text);
  return Eigen::Map<const Vector>(values.data(),
                                  static_cast<Eigen::Index>(values.size()));
}

std::vector<Matrix> CrossList(const std::string& mode, int receivers,
                              int senders) {
  if (mode == "paired") {
    if (receivers != senders) {
      throw ConfigError(fmt::format(
          "network.cross: paired weights need equal side sizes, got {} and {}",
          receivers, senders));
    }
    return {PairedCrossMatrix(receivers, senders)};
  }
  return {UniformCrossMatrix(receivers, senders)};
}

}  // namespace

Matrix RandomPathArcIncidence(int n_paths, int n_arcs, Rng& rng) {
  if (n_paths < 1 || n_arcs < 1) {
    throw InvalidInputError("need at least one path and one arc");
  }
  Matrix d = Matrix::Zero(n_paths, n_arcs);
  std::vector<int> arcs(n_arcs);
  for (int p = 0; p < n_paths; ++p) {
    std::iota(arcs.begin(), arcs.end(), 0);
    const int length = 1 + static_cast<int>(rng.UniformInt(std::min(4, n_arcs)));
    // Partial Fisher-Yates picks `length` distinct arcs.
    for (int k = 0; k < length; ++k) {
      const int j = k + static_cast<int>(rng.UniformInt(n_arcs - k));
      std::swap(arcs[k], arcs[j]);
      d(p, arcs[k]) = 1.0;
    }
  }
  for (int k = 0; k < n_arcs; ++k) {
    if (d.col(k).sum() == 0.0) d(rng.UniformInt(n_paths), k) = 1.0;
  }
  return d;
}

std::vector<Vector> RandomDetectionProbabilities(int n_agents, int n_arcs,
                                                 Rng& rng) {
  std::vector<Vector> probs(n_agents, Vector(n_arcs));
  for (Vector& p : probs) {
    for (int k = 0; k < n_arcs; ++k) p[k] = rng.Uniform(0.2, 0.9);
  }
  return probs;
}

MultilinearGame BuildInterdictionPreset(int n_agents, int n_paths, int n_arcs,
                                        std::uint64_t seed) {
  Rng incidence_rng(seed, "interdiction-incidence");
  Rng detection_rng(seed, "interdiction-detection");
  const Matrix d = RandomPathArcIncidence(n_paths, n_arcs, incidence_rng);
  return BuildInterdictionGame(
      n_agents, n_paths, n_arcs, d,
      RandomDetectionProbabilities(n_agents, n_arcs, detection_rng));
}

MultilinearGame MatchingPennies(int n_agents) {
  Matrix a(2, 2);
  a << 1.0, -1.0, -1.0, 1.0;
  return BuildMatrixGame(a, n_agents);
}

Matrix ParseMatrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::string row;
  std::istringstream in{std::string(text)};
  while (std::getline(in, row, ';')) rows.push_back(SplitNumbers(row));
  if (rows.empty() || rows.front().empty()) {
    throw ConfigError("matrix text is empty");
  }
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) {
      throw ConfigError("matrix rows have different lengths");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<UndirectedGraph> BuildGraphPool(
    const NetworkSideConfig& network, int n, const RunConfig& config,
    Side side, const std::filesystem::path& base_dir) {
  const std::string tag = fmt::format("side{}", SideIndex(side) + 1);
  if (n == 1) return {UndirectedGraph(1)};
  if (network.kind == "random-pool") {
    Rng rng(config.seed, "pool-" + tag);
    std::vector<UndirectedGraph> pool;
    for (int k = 0; k < config.pool_size; ++k) {
      pool.push_back(RandomConnectedGraph(n, config.edge_prob, rng));
    }
    return pool;
  }
  if (network.kind == "ring") return {UndirectedGraph::Ring(n)};
  if (network.kind == "complete") return {UndirectedGraph::Complete(n)};
  if (network.kind == "path") return {UndirectedGraph::Path(n)};
  if (network.kind == "star") return {UndirectedGraph::Star(n)};
  if (network.kind == "lambda2") {
    return {GraphWithTargetConnectivity(
        n, network.lambda2, config.lambda2_tolerance,
        SubstreamSeed(config.seed, "lambda2-" + tag))};
  }
  if (network.kind == "file") {
    std::filesystem::path path = network.file;
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return LoadGraphPool(path, n);
  }
  throw ConfigError(fmt::format("unknown network kind '{}'", network.kind));
}

Experiment BuildExperiment(const RunConfig& config,
                           const std::filesystem::path& base_dir) {
  ValidateConfig(config);
  SubnetworkZeroSumGame game = [&] {
    if (config.preset == "power-allocation") return BuildPowerAllocationGame();
    if (config.preset == "matching-pennies") {
      return MakeGame(MatchingPennies(config.agents));
    }
    if (config.preset == "matrix") {
      return MakeGame(BuildMatrixGame(ParseMatrix(config.matrix), config.agents));
    }
    return MakeGame(BuildInterdictionPreset(config.agents, config.paths,
                                            config.arcs, config.seed));
  }();

  auto geometry_of = [](const std::string& name) {
    return name == "euclidean" ? BregmanGeometry::Euclidean()
                               : BregmanGeometry::NegativeEntropy();
  };
  GeometryPair geometry = {geometry_of(config.geometry1),
                           geometry_of(config.geometry2)};

  const int n1 = game.num_agents(Side::kOne);
  const int n2 = game.num_agents(Side::kTwo);
  std::array<std::vector<UndirectedGraph>, 2> graphs = {
      BuildGraphPool(config.network1, n1, config, Side::kOne, base_dir),
      BuildGraphPool(config.network2, n2, config, Side::kTwo, base_dir)};
  std::array<std::vector<WeightedDigraph>, 2> pools;
  for (int l = 0; l < 2; ++l) {
    for (const UndirectedGraph& g : graphs[l]) {
      pools[l].push_back(MetropolisWeights(g));
    }
  }
  CommunicationSchedule schedule(
      std::move(pools[0]), std::move(pools[1]), CrossList(config.cross, n1, n2),
      CrossList(config.cross, n2, n1), SubstreamSeed(config.seed, "schedule"));

  StepSchedule steps = config.step_kind == "power"
                           ? StepSchedule::Power(config.kappa)
                       : config.step_kind == "constant"
                           ? StepSchedule::Constant(config.alpha)
                           : StepSchedule::ConstantForHorizon(config.horizon);

  std::array<AgentPoints, 2> init = DefaultInit(game);
  for (int l = 0; l < 2; ++l) {
    const std::string& text = l == 0 ? config.init1 : config.init2;
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    const Vector p = ParsePoint(text);
    game.domain(l == 0 ? Side::kOne : Side::kTwo).Require(p, "initial point");
    init[l].assign(init[l].size(), p);
  }
  return Experiment{std::move(game), geometry, std::move(schedule), steps,
                    std::move(init), std::move(graphs)};
}

}  // namespace subzero
