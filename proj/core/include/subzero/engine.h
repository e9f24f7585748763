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

#ifndef SUBZERO_ENGINE_H_
#define SUBZERO_ENGINE_H_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subzero/bounds.h"
#include "subzero/game.h"
#include "subzero/geometry.h"
#include "subzero/network.h"
#include "subzero/steps.h"

namespace subzero {

using AgentPoints = std::vector<Vector>;

// Everything one round of the algorithm touches. u_into[l] holds the
// estimates that side-l agents form of the other side's state.
struct RoundState {
  int t = 0;
  std::array<AgentPoints, 2> x;
  std::array<AgentPoints, 2> v;
  std::array<AgentPoints, 2> u_into;
};

// Running averages over x(0), ..., x(t-1).
struct AverageSnapshot {
  int t = 0;
  std::array<AgentPoints, 2> uniform;
  std::array<AgentPoints, 2> weighted;
};

struct MetricRow {
  int t = 0;
  Side side = Side::kOne;
  int agent = 0;
  std::optional<double> avg_regret;
  double consensus_err = 0.0;
  std::optional<double> dist_to_ne;
  std::optional<double> gap_avg;
  double t1_bound_avg = 0.0;
  double h_bound = 0.0;
};

struct RunOptions {
  int horizon = 1000;
  // Metric rows at t = s, 2s, ..., <= horizon. Zero disables rows.
  int metric_stride = 0;
  // Round snapshots kept every this many rounds; negative selects 1 for
  // horizons up to 10^4 and a stride capping the count near 10^4 above
  // that; zero keeps none.
  int snapshot_stride = 0;
  bool compute_regret = true;
  bool compute_gap = true;
  // Store per-round consensus errors (three series per side).
  bool record_consensus = true;
  // Keep every agent's per-round opponent estimate. Always on for games
  // without a finite-strategy form, whose regret needs the history.
  bool keep_opponent_history = false;
  // Reference NE used for the dist_to_ne column.
  std::optional<std::array<Vector, 2>> ne_point;
  // Initial states; empty selects the domain center for every agent.
  std::array<AgentPoints, 2> init;
  // Inner solver tolerance for smooth-game regret and gap evaluations.
  double oracle_tolerance = 1e-9;
  std::uint64_t oracle_seed = 0;
  // Called once per round t = 0..horizon after mixing, before the update.
  std::function<void(const RoundState&)> observer;
};

struct SimulationTrace {
  int horizon = 0;
  std::array<int, 2> num_agents = {0, 0};
  std::vector<RoundState> snapshots;
  // [side][agent][t - 1]: global side cost at (x(t), u(t)), t = 1..T.
  std::array<std::vector<std::vector<double>>, 2> played_cost;
  // [side][agent][t - 1]: opponent estimate at round t, when kept.
  std::array<std::vector<AgentPoints>, 2> opponent_history;
  // [side][agent][t - 1]: exact regret after t rounds; finite-strategy
  // games only.
  std::array<std::vector<std::vector<double>>, 2> regret;
  // [side][kind][t - 1] with kind 0: max_i |x_i - xbar|, 1: max_i
  // |xbar - v_i|, 2: max over receivers |xbar - u_i|, in the side's norm.
  std::array<std::array<std::vector<double>, 3>, 2> consensus;
  std::vector<MetricRow> metrics;
  std::vector<AverageSnapshot> averages;
  std::array<AgentPoints, 2> final_x;
  AverageSnapshot final_averages;
  TheoryConstants constants;
};

// Initial points: the domain center for every agent.
std::array<AgentPoints, 2> DefaultInit(const SubnetworkZeroSumGame& game);

SimulationTrace Run(const SubnetworkZeroSumGame& game,
                    const GeometryPair& geometry,
                    const CommunicationSchedule& schedule,
                    const StepSchedule& steps, const RunOptions& options);

// Regret of one agent after T rounds against its own estimate sequence.
double Regret(const SubnetworkZeroSumGame& game, const SimulationTrace& trace,
              Side side, int agent, int T, double tolerance = 1e-9);

// max_y U(x1, y) - min_x U(x, x2).
double Gap(const SubnetworkZeroSumGame& game, const Vector& x1,
           const Vector& x2, double tolerance = 1e-9);

// Agent on the other side paired with `agent` in gap computations.
inline int PairedAgent(int agent, int other_count) {
  return agent % other_count;
}

}  // namespace subzero

#endif  // SUBZERO_ENGINE_H_
