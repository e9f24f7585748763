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

#include "subzero/engine.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <fmt/format.h>

#include "subzero/error.h"
#include "subzero/oracles.h"

namespace subzero {
namespace {

constexpr int kFullSnapshotHorizon = 10000;

int ResolveSnapshotStride(int requested, int horizon) {
  if (requested >= 0) return requested;
  if (horizon <= kFullSnapshotHorizon) return 1;
  return (horizon + kFullSnapshotHorizon - 1) / kFullSnapshotHorizon;
}

Vector Mean(const AgentPoints& points) {
  Vector m = Vector::Zero(points.front().size());
  for (const Vector& p : points) m += p;
  return m / static_cast<double>(points.size());
}

// Global side cost of side l at the agent's own point and its estimate of
// the opponent.
double PlayedCost(const SubnetworkZeroSumGame& game, Side side,
                  const Vector& own, const Vector& estimate) {
  return side == Side::kOne ? game.SideCostUnchecked(side, own, estimate)
                            : game.SideCostUnchecked(side, estimate, own);
}

// Best fixed action of `side` in hindsight against an estimate history,
// for games without a finite-strategy form.
double HindsightMinimum(const SubnetworkZeroSumGame& game, Side side,
                        const AgentPoints& history, int T, double tolerance,
                        std::uint64_t seed) {
  // Minimize the time average so the stationarity tolerance does not scale
  // with the horizon.
  const double inv_t = 1.0 / static_cast<double>(T);
  ConvexObjective f;
  if (side == Side::kOne) {
    f.value = [&](const Vector& x) {
      double s = 0.0;
      for (int k = 0; k < T; ++k) s += game.SideCostUnchecked(side, x, history[k]);
      return s * inv_t;
    };
    f.gradient = [&](const Vector& x) {
      Vector g = Vector::Zero(x.size());
      for (int k = 0; k < T; ++k) g += game.GlobalGradient(side, x, history[k]);
      return Vector(g * inv_t);
    };
  } else {
    f.value = [&](const Vector& x) {
      double s = 0.0;
      for (int k = 0; k < T; ++k) s += game.SideCostUnchecked(side, history[k], x);
      return s * inv_t;
    };
    f.gradient = [&](const Vector& x) {
      Vector g = Vector::Zero(x.size());
      for (int k = 0; k < T; ++k) g -= game.GlobalGradient(side, history[k], x);
      return Vector(g * inv_t);
    };
  }
  MinimizerOptions options;
  options.tolerance = tolerance;
  options.seed = seed;
  // The objective is convex, so one certified start is already global.
  options.starts = 1;
  return CertifiedMinOverDomain(f, game.domain(side), options).value *
         static_cast<double>(T);
}

bool SameHistory(const AgentPoints& a, const AgentPoints& b, int T) {
  for (int k = 0; k < T; ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

}  // namespace

std::array<AgentPoints, 2> DefaultInit(const SubnetworkZeroSumGame& game) {
  std::array<AgentPoints, 2> init;
  for (Side side : kBothSides) {
    init[SideIndex(side)].assign(game.num_agents(side),
                                 game.domain(side).Center());
  }
  return init;
}

double Gap(const SubnetworkZeroSumGame& game, const Vector& x1,
           const Vector& x2, double tolerance) {
  game.domain(Side::kOne).Require(x1, "x1");
  game.domain(Side::kTwo).Require(x2, "x2");
  double gap = 0.0;
  if (const MultilinearGame* ml = game.multilinear()) {
    const Matrix& a = ml->mean_cost_matrix(Side::kOne);
    gap = (a.transpose() * x1).maxCoeff() - (a * x2).minCoeff();
  } else {
    ConvexObjective inner1{
        [&](const Vector& x) { return game.SideCostUnchecked(Side::kOne, x, x2); },
        [&](const Vector& x) { return game.GlobalGradient(Side::kOne, x, x2); }};
    ConvexObjective inner2{
        [&](const Vector& y) { return -game.SideCostUnchecked(Side::kOne, x1, y); },
        [&](const Vector& y) -> Vector {
          return -game.GlobalGradient(Side::kTwo, x1, y);
        }};
    MinimizerOptions options;
    options.tolerance = tolerance;
    const double min_x = CertifiedMinOverDomain(inner1, game.domain(Side::kOne),
                                                options).value;
    const double max_y = -CertifiedMinOverDomain(inner2, game.domain(Side::kTwo),
                                                 options).value;
    gap = max_y - min_x;
  }
  return gap;
}

double Regret(const SubnetworkZeroSumGame& game, const SimulationTrace& trace,
              Side side, int agent, int T, double tolerance) {
  const int l = SideIndex(side);
  if (T < 1 || T > trace.horizon) {
    throw ParameterError(fmt::format("regret horizon {} outside [1, {}]", T,
                                     trace.horizon));
  }
  if (agent < 0 || agent >= trace.num_agents[l]) {
    throw InvalidInputError(fmt::format("no agent {} on side {}", agent, l + 1));
  }
  if (!trace.regret[l].empty()) return trace.regret[l][agent][T - 1];
  if (trace.opponent_history[l].empty()) {
    throw CapabilityError(
        "regret needs either a finite-strategy game or the opponent estimate "
        "history");
  }
  const auto& played = trace.played_cost[l][agent];
  double total = 0.0;
  for (int k = 0; k < T; ++k) total += played[k];
  return total - HindsightMinimum(game, side, trace.opponent_history[l][agent],
                                  T, tolerance, 0);
}

SimulationTrace Run(const SubnetworkZeroSumGame& game,
                    const GeometryPair& geometry,
                    const CommunicationSchedule& schedule,
                    const StepSchedule& steps, const RunOptions& options) {
  const int T = options.horizon;
  if (T < 0) throw ParameterError("horizon must be nonnegative");
  if (options.metric_stride < 0) {
    throw ParameterError("metric stride must be nonnegative");
  }
  for (Side side : kBothSides) {
    if (schedule.num_agents(side) != game.num_agents(side)) {
      throw InvalidInputError(fmt::format(
          "schedule and game disagree on the size of side {}",
          SideIndex(side) + 1));
    }
    if (geometry[SideIndex(side)].kind() == GeometryKind::kNegativeEntropy &&
        !game.domain(side).is_simplex()) {
      throw CapabilityError("negative-entropy geometry requires a simplex");
    }
  }

  const std::array<int, 2> n = {game.num_agents(Side::kOne),
                                game.num_agents(Side::kTwo)};
  std::array<AgentPoints, 2> x = DefaultInit(game);
  for (Side side : kBothSides) {
    const int l = SideIndex(side);
    if (options.init[l].empty()) continue;
    if (static_cast<int>(options.init[l].size()) != n[l]) {
      throw InvalidInputError(fmt::format(
          "side {} needs {} initial points, got {}", l + 1, n[l],
          options.init[l].size()));
    }
    for (const Vector& p : options.init[l]) {
      game.domain(side).Require(p, "initial point");
      if (geometry[l].kind() == GeometryKind::kNegativeEntropy &&
          !(p.minCoeff() > 0.0)) {
        throw SingularReferenceError(
            "negative-entropy geometry needs strictly positive initial points");
      }
    }
    x[l] = options.init[l];
  }
  if (options.ne_point) {
    game.domain(Side::kOne).Require((*options.ne_point)[0], "reference NE x1");
    game.domain(Side::kTwo).Require((*options.ne_point)[1], "reference NE x2");
  }

  SimulationTrace trace;
  trace.horizon = T;
  trace.num_agents = n;
  trace.constants = ComputeTheoryConstants(game, geometry, schedule, x);

  const MultilinearGame* ml = game.multilinear();
  const bool exact_regret = ml != nullptr && options.compute_regret;
  const bool keep_history =
      options.keep_opponent_history || (ml == nullptr && options.compute_regret);
  const int snapshot_stride = ResolveSnapshotStride(options.snapshot_stride, T);
  const int metric_stride = options.metric_stride;

  std::array<std::vector<double>, 2> h_series;
  std::array<std::vector<double>, 2> t1_series;
  if (metric_stride > 0) {
    for (Side side : kBothSides) {
      h_series[SideIndex(side)] =
          ConsensusBoundSeries(trace.constants, side, steps, T);
      t1_series[SideIndex(side)] =
          RegretBoundSeries(trace.constants, steps, side, T);
    }
  }

  // Per-agent accumulators.
  std::array<std::vector<Vector>, 2> score;  // cost of each pure action
  for (int l = 0; l < 2; ++l) {
    trace.played_cost[l].assign(n[l], {});
    for (auto& series : trace.played_cost[l]) series.reserve(T);
    if (keep_history) {
      trace.opponent_history[l].assign(n[l], {});
      for (auto& h : trace.opponent_history[l]) h.reserve(T);
    }
    if (exact_regret) {
      trace.regret[l].assign(n[l], {});
      for (auto& series : trace.regret[l]) series.reserve(T);
      score[l].assign(n[l], Vector::Zero(ml->num_actions(l == 0 ? Side::kOne
                                                                : Side::kTwo)));
    }
    if (options.record_consensus) {
      for (auto& series : trace.consensus[l]) series.reserve(T);
    }
  }
  std::array<std::vector<double>, 2> cumulative = {
      std::vector<double>(n[0], 0.0), std::vector<double>(n[1], 0.0)};

  AverageSnapshot avg;
  double weight_sum = 0.0;
  for (int l = 0; l < 2; ++l) {
    avg.uniform[l].assign(n[l], Vector::Zero(game.domain(l == 0 ? Side::kOne
                                                                : Side::kTwo)
                                                  .dim()));
    avg.weighted[l] = avg.uniform[l];
  }

  RoundState state;
  for (int l = 0; l < 2; ++l) {
    state.v[l].resize(n[l]);
    state.u_into[l].resize(n[l]);
  }

  for (int t = 0; t <= T; ++t) {
    state.t = t;
    state.x = x;
    for (Side side : kBothSides) {
      const int l = SideIndex(side);
      const int o = 1 - l;
      const Matrix& w = schedule.Intra(side, t);
      const Matrix& c = schedule.CrossInto(side, t);
      for (int i = 0; i < n[l]; ++i) {
        Vector v = Vector::Zero(x[l][i].size());
        for (int j = 0; j < n[l]; ++j) {
          if (w(i, j) != 0.0) v += w(i, j) * x[l][j];
        }
        Vector u = Vector::Zero(x[o][0].size());
        for (int j = 0; j < n[o]; ++j) {
          if (c(i, j) != 0.0) u += c(i, j) * x[o][j];
        }
        state.v[l][i] = std::move(v);
        state.u_into[l][i] = std::move(u);
      }
    }
    if (snapshot_stride > 0 && t % snapshot_stride == 0) {
      trace.snapshots.push_back(state);
    }
    if (options.observer) options.observer(state);

    if (t >= 1) {
      std::array<Vector, 2> mean = {Mean(x[0]), Mean(x[1])};
      for (Side side : kBothSides) {
        const int l = SideIndex(side);
        const int o = 1 - l;
        for (int i = 0; i < n[l]; ++i) {
          const Vector& u = state.u_into[l][i];
          const double f = PlayedCost(game, side, x[l][i], u);
          trace.played_cost[l][i].push_back(f);
          cumulative[l][i] += f;
          if (keep_history) trace.opponent_history[l][i].push_back(u);
          if (exact_regret) {
            const Matrix& a = ml->mean_cost_matrix(side);
            if (side == Side::kOne) {
              score[l][i].noalias() += a * u;
            } else {
              score[l][i].noalias() += a.transpose() * u;
            }
            trace.regret[l][i].push_back(cumulative[l][i] -
                                         score[l][i].minCoeff());
          }
        }
        if (options.record_consensus) {
          const BregmanGeometry& geo = geometry[l];
          double cx = 0.0, cv = 0.0, cu = 0.0;
          for (int i = 0; i < n[l]; ++i) {
            cx = std::max(cx, geo.PrimalNorm(x[l][i] - mean[l]));
            cv = std::max(cv, geo.PrimalNorm(mean[l] - state.v[l][i]));
          }
          // Estimates of side l are held by the other side's agents.
          for (int j = 0; j < n[o]; ++j) {
            cu = std::max(cu, geo.PrimalNorm(mean[l] - state.u_into[o][j]));
          }
          trace.consensus[l][0].push_back(cx);
          trace.consensus[l][1].push_back(cv);
          trace.consensus[l][2].push_back(cu);
        }
      }

      if (metric_stride > 0 && t % metric_stride == 0) {
        avg.t = t;
        trace.averages.push_back(avg);
        std::map<std::pair<int, int>, double> gaps;
        for (Side side : kBothSides) {
          const int l = SideIndex(side);
          const int o = 1 - l;
          std::vector<double> smooth_regret;
          for (int i = 0; i < n[l]; ++i) {
            MetricRow row;
            row.t = t;
            row.side = side;
            row.agent = i;
            if (exact_regret) {
              row.avg_regret = trace.regret[l][i].back() / t;
            } else if (options.compute_regret) {
              // Agents sharing an estimate history share the benchmark.
              double best = std::numeric_limits<double>::quiet_NaN();
              for (int k = 0; k < i; ++k) {
                if (SameHistory(trace.opponent_history[l][k],
                                trace.opponent_history[l][i], t)) {
                  best = smooth_regret[k];
                  break;
                }
              }
              if (std::isnan(best)) {
                best = HindsightMinimum(game, side,
                                        trace.opponent_history[l][i], t,
                                        options.oracle_tolerance,
                                        options.oracle_seed);
              }
              smooth_regret.push_back(best);
              row.avg_regret = (cumulative[l][i] - best) / t;
            }
            row.consensus_err = geometry[l].PrimalNorm(x[l][i] - mean[l]);
            if (options.ne_point) {
              row.dist_to_ne = (x[l][i] - (*options.ne_point)[l]).norm();
            }
            if (options.compute_gap) {
              const int partner = PairedAgent(i, n[o]);
              const std::pair<int, int> key =
                  l == 0 ? std::make_pair(i, partner)
                         : std::make_pair(partner, i);
              auto it = gaps.find(key);
              if (it == gaps.end()) {
                const double g =
                    Gap(game, avg.weighted[0][key.first],
                        avg.weighted[1][key.second], options.oracle_tolerance);
                it = gaps.emplace(key, g).first;
              }
              row.gap_avg = it->second;
            }
            row.t1_bound_avg = t1_series[l][t - 1] / t;
            row.h_bound = h_series[l][t - 1];
            trace.metrics.push_back(row);
          }
        }
      }
    }

    if (t == T) break;

    const double alpha = steps(t);
    if (!(alpha > 0.0)) {
      throw ParameterError(fmt::format("step size at t={} is not positive", t));
    }
    weight_sum += alpha;
    std::array<AgentPoints, 2> next;
    for (Side side : kBothSides) {
      const int l = SideIndex(side);
      const ActionDomain& domain = game.domain(side);
      next[l].resize(n[l]);
      for (int i = 0; i < n[l]; ++i) {
        const AgentCost& cost = game.cost(side, i);
        const Vector g =
            side == Side::kOne
                ? cost.GradientFirst(state.v[l][i], state.u_into[l][i])
                : cost.GradientSecond(state.u_into[l][i], state.v[l][i]);
        next[l][i] = geometry[l].MirrorStep(domain, state.v[l][i], g, alpha);
        if (!domain.Contains(next[l][i])) {
          throw InternalError(fmt::format(
              "iterate of side {} agent {} left its domain at round {}", l + 1,
              i, t + 1));
        }
        // Running averages over x(0..t).
        avg.uniform[l][i] = (t * avg.uniform[l][i] + x[l][i]) / (t + 1.0);
        avg.weighted[l][i] +=
            (alpha / weight_sum) * (x[l][i] - avg.weighted[l][i]);
      }
    }
    x = std::move(next);
  }

  avg.t = T;
  trace.final_averages = std::move(avg);
  trace.final_x = std::move(x);
  return trace;
}

}  // namespace subzero
