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

#ifndef SUBZERO_PRESETS_H_
#define SUBZERO_PRESETS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "subzero/config.h"
#include "subzero/engine.h"
#include "subzero/game.h"
#include "subzero/geometry.h"
#include "subzero/network.h"
#include "subzero/rng.h"
#include "subzero/steps.h"

namespace subzero {

// Everything a run needs, built from a config.
struct Experiment {
  SubnetworkZeroSumGame game;
  GeometryPair geometry;
  CommunicationSchedule schedule;
  StepSchedule steps;
  std::array<AgentPoints, 2> init;
  std::array<std::vector<UndirectedGraph>, 2> graphs;
};

// Relative file paths in the config resolve against base_dir.
Experiment BuildExperiment(const RunConfig& config,
                           const std::filesystem::path& base_dir = {});

// Paths of one to four distinct arcs each; every arc lies on some path.
Matrix RandomPathArcIncidence(int n_paths, int n_arcs, Rng& rng);

// Detection probability of every arc for every agent, uniform in
// [0.2, 0.9].
std::vector<Vector> RandomDetectionProbabilities(int n_agents, int n_arcs,
                                                 Rng& rng);

MultilinearGame BuildInterdictionPreset(int n_agents, int n_paths, int n_arcs,
                                        std::uint64_t seed);

MultilinearGame MatchingPennies(int n_agents = 1);

// "3,0;1,2" -> [[3, 0], [1, 2]].
Matrix ParseMatrix(std::string_view text);

std::vector<UndirectedGraph> BuildGraphPool(
    const NetworkSideConfig& network, int n, const RunConfig& config,
    Side side, const std::filesystem::path& base_dir = {});

}  // namespace subzero

#endif  // SUBZERO_PRESETS_H_
