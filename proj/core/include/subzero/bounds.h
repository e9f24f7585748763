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

#ifndef SUBZERO_BOUNDS_H_
#define SUBZERO_BOUNDS_H_

#include <array>
#include <vector>

#include "subzero/game.h"
#include "subzero/geometry.h"
#include "subzero/network.h"
#include "subzero/steps.h"

namespace subzero {

// Constants entering the regret, consensus and constant-step bounds. Arrays
// are indexed by SideIndex.
struct TheoryConstants {
  std::array<int, 2> n = {0, 0};
  // L_{l,1}: Lipschitz constant of side-l costs in their own action.
  std::array<double, 2> lipschitz_own = {0.0, 0.0};
  // L_{l,2}: same, in the opponent's action.
  std::array<double, 2> lipschitz_other = {0.0, 0.0};
  double lipschitz = 0.0;
  std::array<double, 2> sigma = {1.0, 1.0};
  std::array<double, 2> gamma = {1.0, 1.0};
  std::array<double, 2> theta = {0.0, 0.0};
  // Largest initial-state norm.
  std::array<double, 2> lambda = {0.0, 0.0};
  // Square root of the largest divergence from the initial state for
  // euclidean geometry; the largest divergence itself for entropy.
  std::array<double, 2> upsilon = {0.0, 0.0};

  double K(Side side) const;
};

TheoryConstants ComputeTheoryConstants(
    const SubnetworkZeroSumGame& game, const GeometryPair& geometry,
    const CommunicationSchedule& schedule,
    const std::array<std::vector<Vector>, 2>& init);

// Regret bound for any agent of `side` after T rounds. Side two uses the
// same expression with the roles of the sides exchanged.
double RegretBound(const TheoryConstants& c, const StepSchedule& steps,
                     Side side, int T);
// Bounds for T = 1..horizon, element T - 1.
std::vector<double> RegretBoundSeries(const TheoryConstants& c,
                                        const StepSchedule& steps, Side side,
                                        int horizon);

// Consensus bound H_l(t), t >= 1.
double ConsensusBound(const TheoryConstants& c, Side side, int t,
                      const StepSchedule& steps);
// H_l(t) for t = 1..horizon, element t - 1.
std::vector<double> ConsensusBoundSeries(const TheoryConstants& c, Side side,
                                         const StepSchedule& steps,
                                         int horizon);

// Error bound on |U(xhat_1i(t), xhat_2j(t)) - U*| for constant steps.
double AverageErrorBound(const TheoryConstants& c, double alpha, int t);
// Its t -> infinity limit.
double AverageErrorLevel(const TheoryConstants& c, double alpha);

}  // namespace subzero

#endif  // SUBZERO_BOUNDS_H_
