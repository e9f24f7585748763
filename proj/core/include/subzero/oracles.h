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

#ifndef SUBZERO_ORACLES_H_
#define SUBZERO_ORACLES_H_

#include <array>
#include <cstdint>
#include <functional>

#include "subzero/game.h"
#include "subzero/geometry.h"

namespace subzero {

struct ConvexObjective {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

struct MinimizerResult {
  Vector point;
  double value = 0.0;
  // Gradient-mapping residual |x - P(x - grad f(x))|_2.
  double residual = 0.0;
  int start = 0;
};

struct MinimizerOptions {
  double tolerance = 1e-9;
  int starts = 5;
  int max_iterations = 20000;
  std::uint64_t seed = 0;
};

// Minimizes a smooth convex function over a simplex or box by spectral
// projected gradient from several seeded starts (the first at the domain
// center). Every start must certify residual <= tolerance; the lowest value
// wins, ties going to the lowest start index. Throws OracleError otherwise.
MinimizerResult CertifiedMinOverDomain(const ConvexObjective& f,
                                       const ActionDomain& domain,
                                       const MinimizerOptions& options = {});

struct BestResponse {
  int action = 0;
  double value = 0.0;
};

// Best pure response of `side` to an opponent mixed strategy: the minimizer
// of the side's average cost, lowest index on ties.
BestResponse BestResponseVertex(const MultilinearGame& game, Side side,
                                const Vector& opponent);

struct NeCertificate {
  Vector x1;
  Vector x2;
  double value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
  // Last non-averaged iterate.
  Vector final_x1;
  Vector final_x2;
};

struct NeSolverOptions {
  double tolerance = 1e-6;
  int max_iterations = 200000;
  // Gap is evaluated every this many iterations.
  int check_every = 50;
  double inner_tolerance = 1e-11;
};

// Centralized mirror-prox on U with adaptive steps, using the same mirror
// step and gap code as the distributed engine. Returns whichever of the last
// iterate and the step-weighted average has the smaller gap once it is at
// most the tolerance; throws CertificateError with the best gap otherwise.
NeCertificate SolveNeCentralized(const SubnetworkZeroSumGame& game,
                                 const GeometryPair& geometry,
                                 const NeSolverOptions& options = {});

// Grid minimization of <g, x - v> + D(x, v) / alpha over a simplex or box
// of dimension at most three. Test-only reference.
Vector BruteForceProx(const BregmanGeometry& geometry,
                      const ActionDomain& domain, const Vector& v,
                      const Vector& g, double alpha, double grid_spacing);

// Solves the same prox problem through the inverse mirror map and a
// bisection on the simplex multiplier.
Vector GenericProxSolve(const BregmanGeometry& geometry,
                        const ActionDomain& domain, const Vector& v,
                        const Vector& g, double alpha);

}  // namespace subzero

#endif  // SUBZERO_ORACLES_H_
