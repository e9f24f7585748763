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

#include "subzero/bounds.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "subzero/error.h"

namespace subzero {

double TheoryConstants::K(Side side) const {
  const int l = SideIndex(side);
  return (n[l] * lipschitz * gamma[l] / (1.0 - theta[l]) + 2.0 * lipschitz) /
         sigma[l];
}

namespace {

double Upsilon(const BregmanGeometry& geometry, const ActionDomain& domain,
               const std::vector<Vector>& init) {
  double worst = 0.0;
  for (const Vector& x0 : init) {
    if (geometry.kind() == GeometryKind::kNegativeEntropy) {
      if (!domain.is_simplex()) {
        throw CapabilityError("negative-entropy geometry requires a simplex");
      }
      // max over the simplex of KL(x || x0) is attained at a vertex.
      worst = std::max(worst, -std::log(x0.minCoeff()));
    } else {
      double d = 0.0;
      for (const Vector& vertex : domain.Vertices()) {
        d = std::max(d, geometry.Divergence(vertex, x0));
      }
      worst = std::max(worst, std::sqrt(d));
    }
  }
  return worst;
}

void RequireHorizon(int T) {
  if (T < 0) throw ParameterError("horizon must be nonnegative");
}

// Coefficients of the regret bound for `side`, with the other side's
// quantities entering through the cross-estimate term.
struct RegretTerms {
  double step_coefficient;
  double upsilon_sq;
  double own_step_coefficient;
};

RegretTerms Terms(const TheoryConstants& c, Side side) {
  const int l = SideIndex(side);
  const int o = 1 - l;
  const double own = c.lipschitz_own[l];
  const double cross = c.lipschitz_other[l] * c.lipschitz_own[o];
  const double a = 4.0 / c.sigma[l] *
                   (c.n[l] * own * own * c.gamma[l] / (1.0 - c.theta[l]) +
                    2.0 * own * own);
  const double b = 12.0 / c.sigma[o] *
                   (c.n[o] * cross * c.gamma[o] / (1.0 - c.theta[o]) +
                    2.0 * cross);
  return {a + b, c.upsilon[l] * c.upsilon[l], own * own / c.sigma[l]};
}

}  // namespace

TheoryConstants ComputeTheoryConstants(
    const SubnetworkZeroSumGame& game, const GeometryPair& geometry,
    const CommunicationSchedule& schedule,
    const std::array<std::vector<Vector>, 2>& init) {
  TheoryConstants c;
  const std::array<Norm, 2> norms = {geometry[0].norm(), geometry[1].norm()};
  for (Side side : kBothSides) {
    const int l = SideIndex(side);
    if (schedule.num_agents(side) != game.num_agents(side)) {
      throw InvalidInputError(fmt::format(
          "schedule has {} agents on side {}, game has {}",
          schedule.num_agents(side), l + 1, game.num_agents(side)));
    }
    if (static_cast<int>(init[l].size()) != game.num_agents(side)) {
      throw InvalidInputError("one initial point per agent is required");
    }
    c.n[l] = game.num_agents(side);
    c.lipschitz_own[l] = game.MaxLipschitzOwn(side, norms);
    c.lipschitz_other[l] = game.MaxLipschitzOther(side, norms);
    c.sigma[l] = geometry[l].strong_convexity();
    const DecayConstants decay = schedule.decay(side);
    c.gamma[l] = decay.gamma;
    c.theta[l] = decay.theta;
    for (const Vector& x0 : init[l]) {
      c.lambda[l] = std::max(c.lambda[l], geometry[l].PrimalNorm(x0));
    }
    c.upsilon[l] = Upsilon(geometry[l], game.domain(side), init[l]);
  }
  c.lipschitz = game.GlobalLipschitz(norms);
  return c;
}

double RegretBound(const TheoryConstants& c, const StepSchedule& steps,
                     Side side, int T) {
  RequireHorizon(T);
  if (T == 0) return Terms(c, side).upsilon_sq / steps(0);
  return RegretBoundSeries(c, steps, side, T).back();
}

std::vector<double> RegretBoundSeries(const TheoryConstants& c,
                                        const StepSchedule& steps, Side side,
                                        int horizon) {
  RequireHorizon(horizon);
  const RegretTerms terms = Terms(c, side);
  std::vector<double> out;
  out.reserve(horizon);
  double sum_prev = 0.0;  // sum_{t<=T} alpha(t-1)
  double sum_cur = 0.0;   // sum_{t<=T} alpha(t)
  std::array<double, 2> geometric = {0.0, 0.0};
  std::array<double, 2> power = {1.0, 1.0};  // theta^(t-1)
  for (int T = 1; T <= horizon; ++T) {
    sum_prev += steps(T - 1);
    sum_cur += steps(T);
    double init_term = 0.0;
    for (int l = 0; l < 2; ++l) {
      geometric[l] += power[l];
      power[l] *= c.theta[l];
      init_term += c.n[l] * c.gamma[l] * c.lambda[l] * geometric[l];
    }
    out.push_back(terms.step_coefficient * sum_prev +
                  terms.upsilon_sq / steps(T) + 4.0 * init_term +
                  terms.own_step_coefficient * sum_cur);
  }
  return out;
}

double ConsensusBound(const TheoryConstants& c, Side side, int t,
                      const StepSchedule& steps) {
  if (t < 1) {
    throw ParameterError(fmt::format("consensus bound needs t >= 1, got {}", t));
  }
  return ConsensusBoundSeries(c, side, steps, t).back();
}

std::vector<double> ConsensusBoundSeries(const TheoryConstants& c, Side side,
                                         const StepSchedule& steps,
                                         int horizon) {
  RequireHorizon(horizon);
  const int l = SideIndex(side);
  const double n = c.n[l];
  const double own = c.lipschitz_own[l];
  std::vector<double> out;
  out.reserve(horizon);
  // s_sum(t) = sum_{s=1}^{t-1} theta^(t-1-s) alpha(s-1).
  double s_sum = 0.0;
  double power = 1.0;  // theta^(t-1)
  for (int t = 1; t <= horizon; ++t) {
    if (t > 1) {
      s_sum = c.theta[l] * s_sum + steps(t - 2);
      power *= c.theta[l];
    }
    out.push_back(n * c.gamma[l] * power * c.lambda[l] +
                  2.0 / c.sigma[l] * own * steps(t - 1) +
                  n * own * c.gamma[l] * s_sum / c.sigma[l]);
  }
  return out;
}

double AverageErrorBound(const TheoryConstants& c, double alpha, int t) {
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
  if (t < 1) throw ParameterError("the constant-step bound needs t >= 1");
  double bound = AverageErrorLevel(c, alpha);
  double transient = 0.0;
  for (int l = 0; l < 2; ++l) {
    bound += c.upsilon[l] * c.upsilon[l] / (t * alpha);
    // sum_{s=0}^{t-1} theta^(s-1)
    const double th = c.theta[l];
    const double geometric = (1.0 - std::pow(th, t)) / ((1.0 - th) * th);
    transient += c.n[l] * c.gamma[l] * c.lambda[l] * geometric;
  }
  return bound + 4.0 * c.lipschitz * transient / t;
}

double AverageErrorLevel(const TheoryConstants& c, double alpha) {
  const double L = c.lipschitz;
  double level = 4.0 * L * (c.K(Side::kOne) + c.K(Side::kTwo)) * alpha;
  for (int l = 0; l < 2; ++l) level += L * L * alpha / c.sigma[l];
  return level;
}

}  // namespace subzero
