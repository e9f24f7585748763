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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "subzero/bounds.h"
#include "subzero/config.h"
#include "subzero/engine.h"
#include "subzero/error.h"
#include "subzero/io.h"
#include "subzero/oracles.h"
#include "subzero/presets.h"
#include "subzero/steps.h"
#include "test_util.h"

namespace subzero {
namespace {

using testing::SourcePath;

const GeometryPair kEntropyPair = {BregmanGeometry::NegativeEntropy(),
                                   BregmanGeometry::NegativeEntropy()};
const GeometryPair kEuclidPair = {BregmanGeometry::Euclidean(),
                                  BregmanGeometry::Euclidean()};

Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  int k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

// Single agents on both sides that always trust themselves.
CommunicationSchedule SoloSchedule() {
  const WeightedDigraph self(Matrix::Ones(1, 1));
  return CommunicationSchedule({self}, {self}, {Matrix::Ones(1, 1)},
                               {Matrix::Ones(1, 1)}, 0);
}

CommunicationSchedule RingSchedule(int n1, int n2, std::uint64_t seed) {
  auto pool = [](int n) {
    std::vector<WeightedDigraph> out;
    if (n == 1) {
      out.emplace_back(Matrix::Ones(1, 1));
    } else {
      out.push_back(MetropolisWeights(UndirectedGraph::Path(n)));
      out.push_back(MetropolisWeights(UndirectedGraph::Complete(n)));
    }
    return out;
  };
  return CommunicationSchedule(pool(n1), pool(n2), {PairedCrossMatrix(n1, n2)},
                               {PairedCrossMatrix(n2, n1)}, seed);
}

Experiment DeskExperiment() {
  return BuildExperiment(LoadConfig(SourcePath("configs/interdiction-desk.ini")),
                         SourcePath("configs"));
}

// A hand-built constants record with distinct values in every slot.
TheoryConstants SampleConstants() {
  TheoryConstants c;
  c.n = {3, 2};
  c.lipschitz_own = {1.5, 0.5};
  c.lipschitz_other = {0.75, 2.0};
  c.lipschitz = 2.0;
  c.sigma = {1.0, 1.0};
  c.gamma = {1.2, 1.1};
  c.theta = {0.9, 0.8};
  c.lambda = {1.0, 0.6};
  c.upsilon = {std::log(4.0), 0.7};
  return c;
}

TEST(StepSchedule, PowerRule) {
  const StepSchedule s = StepSchedule::Power(0.5);
  EXPECT_DOUBLE_EQ(s(0), 1.0);
  EXPECT_DOUBLE_EQ(s(3), 0.5);
  EXPECT_FALSE(s.square_summable());
  EXPECT_TRUE(StepSchedule::Power(0.6).square_summable());
  for (int t = 0; t < 1000; ++t) {
    EXPECT_GT(s(t), 0.0);
    EXPECT_LE(s(t + 1), s(t));
  }
}

TEST(StepSchedule, ConstantForHorizon) {
  const StepSchedule s = StepSchedule::ConstantForHorizon(100);
  EXPECT_DOUBLE_EQ(s(0), 0.1);
  EXPECT_DOUBLE_EQ(s(99), 0.1);
  EXPECT_EQ(s.kind(), StepSchedule::Kind::kConstant);
}

TEST(StepSchedule, RejectsInvalidParameters) {
  try {
    StepSchedule::Power(0.4);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("sum alpha^2 = inf"),
              std::string::npos);
  }
  EXPECT_THROW(StepSchedule::Power(1.5), ParameterError);
  EXPECT_THROW(StepSchedule::Constant(0.0), ParameterError);
  EXPECT_THROW(StepSchedule::ConstantForHorizon(0), ParameterError);
}

TEST(RegretBound, EmptyHorizonKeepsOnlyDivergenceTerm) {
  const TheoryConstants c = SampleConstants();
  const StepSchedule s = StepSchedule::Power(0.5);
  EXPECT_DOUBLE_EQ(RegretBound(c, s, Side::kOne, 0),
                   c.upsilon[0] * c.upsilon[0] / s(0));
}

TEST(RegretBound, TwoRoundsTermByTerm) {
  const TheoryConstants c = SampleConstants();
  const StepSchedule s = StepSchedule::Power(0.75);
  const double a0 = 1.0;
  const double a1 = std::pow(2.0, -0.75);
  const double a2 = std::pow(3.0, -0.75);
  const double own = 1.5 * 1.5;
  const double cross = 0.75 * 0.5;
  const double first = 4.0 * (3 * own * 1.2 / 0.1 + 2 * own) * (a0 + a1);
  const double second = 12.0 * (2 * cross * 1.1 / 0.2 + 2 * cross) * (a0 + a1);
  const double init = 4.0 * ((3 * 1.2 * 1.0) * (1 + 0.9) +
                             (2 * 1.1 * 0.6) * (1 + 0.8));
  const double divergence = std::log(4.0) * std::log(4.0) / a2;
  const double tail = (a1 + a2) * own;
  EXPECT_NEAR(RegretBound(c, s, Side::kOne, 2),
              first + second + init + divergence + tail, 1e-9);
}

TEST(RegretBound, IncreasesWithGamma) {
  TheoryConstants c = SampleConstants();
  const StepSchedule s = StepSchedule::Power(0.5);
  const double before = RegretBound(c, s, Side::kOne, 50);
  c.gamma[0] *= 2.0;
  EXPECT_GT(RegretBound(c, s, Side::kOne, 50), before);
}

TEST(RegretBound, SeriesMatchesPointwise) {
  const TheoryConstants c = SampleConstants();
  const StepSchedule s = StepSchedule::Power(0.6);
  const std::vector<double> series = RegretBoundSeries(c, s, Side::kTwo, 40);
  for (int T = 1; T <= 40; ++T) {
    EXPECT_DOUBLE_EQ(series[T - 1], RegretBound(c, s, Side::kTwo, T));
  }
}

TEST(ConsensusBound, FirstRound) {
  const TheoryConstants c = SampleConstants();
  const StepSchedule s = StepSchedule::Power(0.5);
  EXPECT_DOUBLE_EQ(ConsensusBound(c, Side::kOne, 1, s),
                   3 * 1.2 * 1.0 + 2.0 * 1.5 * 1.0);
  EXPECT_THROW(ConsensusBound(c, Side::kOne, 0, s), ParameterError);
}

TEST(ConsensusBound, ConstantStepLimit) {
  const TheoryConstants c = SampleConstants();
  const double alpha = 0.05;
  const StepSchedule s = StepSchedule::Constant(alpha);
  const double limit = 3 * 1.5 * 1.2 * alpha / (1.0 - 0.9) + 2 * 1.5 * alpha;
  EXPECT_NEAR(ConsensusBound(c, Side::kOne, 200, s), limit, 1e-6);
}

TEST(AverageErrorBound, LimitAndHalving) {
  const TheoryConstants c = SampleConstants();
  const double level = AverageErrorLevel(c, 0.01);
  EXPECT_NEAR(AverageErrorBound(c, 0.01, 100000000), level, 1e-4);
  EXPECT_DOUBLE_EQ(AverageErrorLevel(c, 0.005), 0.5 * level);
  const double k1 = (3 * 2.0 * 1.2 / 0.1 + 4.0);
  const double k2 = (2 * 2.0 * 1.1 / 0.2 + 4.0);
  EXPECT_DOUBLE_EQ(c.K(Side::kOne), k1);
  EXPECT_DOUBLE_EQ(c.K(Side::kTwo), k2);
  EXPECT_NEAR(level, 2 * 4.0 * 0.01 + 4 * 2.0 * (k1 + k2) * 0.01, 1e-12);
}

TEST(AverageErrorBound, FirstRoundByHand) {
  const TheoryConstants c = SampleConstants();
  const double alpha = 0.1;
  const double k1 = (3 * 2.0 * 1.2 / 0.1 + 4.0);
  const double k2 = (2 * 2.0 * 1.1 / 0.2 + 4.0);
  // The s = 0 term carries theta^-1.
  const double expected =
      std::log(4.0) * std::log(4.0) / alpha + 0.7 * 0.7 / alpha +
      2 * 4.0 * alpha + 4 * 2.0 * (k1 + k2) * alpha +
      4 * 2.0 * (3 * 1.2 * 1.0 / 0.9 + 2 * 1.1 * 0.6 / 0.8);
  EXPECT_NEAR(AverageErrorBound(c, alpha, 1), expected, 1e-9);
  EXPECT_THROW(AverageErrorBound(c, 0.0, 1), ParameterError);
  EXPECT_THROW(AverageErrorBound(c, 0.1, 0), ParameterError);
}

TEST(TheoryConstants, ComputedFromGameAndSchedule) {
  const SubnetworkZeroSumGame game = MakeGame(MatchingPennies(3));
  const CommunicationSchedule schedule = RingSchedule(3, 3, 1);
  const TheoryConstants c =
      ComputeTheoryConstants(game, kEntropyPair, schedule, DefaultInit(game));
  EXPECT_EQ(c.n[0], 3);
  EXPECT_DOUBLE_EQ(c.lipschitz_own[0], 1.0);
  EXPECT_DOUBLE_EQ(c.lipschitz, 1.0);
  EXPECT_NEAR(c.upsilon[0], std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(c.lambda[1], 1.0);
  EXPECT_LT(c.theta[0], 1.0);
  const TheoryConstants e =
      ComputeTheoryConstants(game, kEuclidPair, schedule, DefaultInit(game));
  EXPECT_NEAR(e.upsilon[0], std::sqrt(0.25), 1e-15);
  EXPECT_NEAR(e.lambda[0], std::sqrt(0.5), 1e-15);
}

TEST(Gap, MatchingPennies) {
  const SubnetworkZeroSumGame game = MakeGame(MatchingPennies());
  EXPECT_DOUBLE_EQ(Gap(game, Vec({0.5, 0.5}), Vec({0.5, 0.5})), 0.0);
  EXPECT_DOUBLE_EQ(Gap(game, Vec({1.0, 0.0}), Vec({1.0, 0.0})), 2.0);
}

TEST(Gap, ZeroGame) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildMatrixGame(Matrix::Zero(2, 3)));
  EXPECT_EQ(Gap(game, Vec({0.3, 0.7}), Vec({0.2, 0.2, 0.6})), 0.0);
}

TEST(Gap, SmoothGameVanishesAtCertifiedEquilibrium) {
  const SubnetworkZeroSumGame game = BuildPowerAllocationGame();
  const NeCertificate cert = SolveNeCentralized(game, kEntropyPair);
  EXPECT_LE(Gap(game, cert.x1, cert.x2), 1e-6);
  EXPECT_GE(Gap(game, cert.x1, cert.x2), -1e-9);
  const Vector center = Vector::Constant(3, 1.0 / 3.0);
  EXPECT_GT(Gap(game, Vec({1.0, 0.0, 0.0}), center), 1e-3);
}

TEST(Run, SingleAgentEuclideanMatchesProjectedGradient) {
  const Matrix a = (Matrix(2, 3) << 3, 0, -1, 1, 2, 0.5).finished();
  const SubnetworkZeroSumGame game = MakeGame(BuildMatrixGame(a));
  const StepSchedule steps = StepSchedule::Power(0.6);
  std::vector<std::array<Vector, 2>> seen;
  RunOptions options;
  options.horizon = 100;
  options.init = {AgentPoints{Vec({0.9, 0.1})},
                  AgentPoints{Vec({0.2, 0.3, 0.5})}};
  options.observer = [&](const RoundState& s) {
    seen.push_back({s.x[0][0], s.x[1][0]});
  };
  subzero::Run(game, kEuclidPair, SoloSchedule(), steps, options);
  ASSERT_EQ(seen.size(), 101u);
  Vector x1 = options.init[0][0];
  Vector x2 = options.init[1][0];
  for (int t = 0; t <= 100; ++t) {
    EXPECT_LE((seen[t][0] - x1).lpNorm<Eigen::Infinity>(), 1e-12) << t;
    EXPECT_LE((seen[t][1] - x2).lpNorm<Eigen::Infinity>(), 1e-12) << t;
    const Vector g1 = a * x2;
    const Vector g2 = a.transpose() * x1;
    x1 = ProjectOntoSimplex(x1 - steps(t) * g1);
    x2 = ProjectOntoSimplex(x2 + steps(t) * g2);
  }
}

TEST(Run, ZeroGameStaysAtInitialization) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildMatrixGame(Matrix::Zero(3, 2), 3));
  RunOptions options;
  options.horizon = 50;
  options.metric_stride = 10;
  options.init = {AgentPoints(3, Vec({0.2, 0.5, 0.3})),
                  AgentPoints(3, Vec({0.6, 0.4}))};
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, RingSchedule(3, 3, 2),
                                    StepSchedule::Power(0.5), options);
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(trace.final_x[0][i].isApprox(options.init[0][i], 1e-14));
    EXPECT_TRUE(trace.final_x[1][i].isApprox(options.init[1][i], 1e-14));
  }
  for (const MetricRow& row : trace.metrics) {
    EXPECT_NEAR(*row.avg_regret, 0.0, 1e-15);
    EXPECT_NEAR(*row.gap_avg, 0.0, 1e-15);
  }
}

TEST(Run, MatchingPenniesWeightedAveragesNearEquilibrium) {
  const SubnetworkZeroSumGame game = MakeGame(MatchingPennies());
  RunOptions options;
  options.horizon = 10000;
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, SoloSchedule(),
                                    StepSchedule::Power(0.6), options);
  for (int l = 0; l < 2; ++l) {
    EXPECT_LE((trace.final_averages.weighted[l][0] - Vec({0.5, 0.5}))
                  .lpNorm<Eigen::Infinity>(),
              1e-2);
  }
}

TEST(Run, MixingMatchesScheduleMatrices) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildInterdictionPreset(4, 5, 6, 3));
  const CommunicationSchedule schedule = RingSchedule(4, 4, 5);
  RunOptions options;
  options.horizon = 20;
  options.snapshot_stride = 1;
  options.compute_regret = false;
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, schedule,
                                    StepSchedule::Power(0.5), options);
  ASSERT_EQ(trace.snapshots.size(), 21u);
  for (const RoundState& s : trace.snapshots) {
    for (Side side : kBothSides) {
      const int l = SideIndex(side);
      const Matrix& w = schedule.Intra(side, s.t);
      const Matrix& c = schedule.CrossInto(side, s.t);
      for (int i = 0; i < 4; ++i) {
        Vector v = Vector::Zero(s.x[l][i].size());
        Vector u = Vector::Zero(s.x[1 - l][i].size());
        for (int j = 0; j < 4; ++j) {
          v += w(i, j) * s.x[l][j];
          u += c(i, j) * s.x[1 - l][j];
        }
        EXPECT_LE((v - s.v[l][i]).norm(), 1e-14);
        EXPECT_LE((u - s.u_into[l][i]).norm(), 1e-14);
        EXPECT_TRUE(game.domain(side).Contains(s.x[l][i]));
      }
    }
  }
}

TEST(Run, RunningAverages) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildInterdictionPreset(3, 4, 5, 8));
  const StepSchedule steps = StepSchedule::Power(0.6);
  RunOptions options;
  options.horizon = 60;
  options.metric_stride = 1;
  options.snapshot_stride = 1;
  const SimulationTrace trace =
      subzero::Run(game, kEntropyPair, RingSchedule(3, 3, 4), steps, options);
  ASSERT_EQ(trace.averages.size(), 60u);
  EXPECT_EQ(trace.averages.front().t, 1);
  for (int l = 0; l < 2; ++l) {
    EXPECT_TRUE(trace.averages.front().uniform[l][0].isApprox(
        trace.snapshots[0].x[l][0]));
  }
  for (const AverageSnapshot& avg : trace.averages) {
    for (int l = 0; l < 2; ++l) {
      for (int i = 0; i < 3; ++i) {
        Vector uniform = Vector::Zero(avg.uniform[l][i].size());
        Vector weighted = uniform;
        double weights = 0.0;
        for (int s = 0; s < avg.t; ++s) {
          uniform += trace.snapshots[s].x[l][i];
          weighted += steps(s) * trace.snapshots[s].x[l][i];
          weights += steps(s);
        }
        EXPECT_LE((uniform / avg.t - avg.uniform[l][i]).norm(), 1e-13);
        EXPECT_LE((weighted / weights - avg.weighted[l][i]).norm(), 1e-13);
        EXPECT_NEAR(avg.weighted[l][i].sum(), 1.0, 1e-12);
        EXPECT_GE(avg.weighted[l][i].minCoeff(), 0.0);
      }
    }
  }
}

TEST(Regret, ZeroGame) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildMatrixGame(Matrix::Zero(2, 2), 2));
  RunOptions options;
  options.horizon = 30;
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, RingSchedule(2, 2, 1),
                                    StepSchedule::Power(0.5), options);
  for (Side side : kBothSides) {
    for (int i = 0; i < 2; ++i) {
      for (int T = 1; T <= 30; ++T) {
        EXPECT_EQ(Regret(game, trace, side, i, T), 0.0);
      }
    }
  }
}

TEST(Regret, FirstRoundByEnumeration) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildInterdictionPreset(3, 6, 8, 21));
  RunOptions options;
  options.horizon = 5;
  options.snapshot_stride = 1;
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, RingSchedule(3, 3, 9),
                                    StepSchedule::Power(0.5), options);
  const RoundState& s = trace.snapshots[1];
  for (int i = 0; i < 3; ++i) {
    double best1 = 1e300;
    for (int p = 0; p < 6; ++p) {
      best1 = std::min(best1, game.SideCost(Side::kOne, Vector::Unit(6, p),
                                            s.u_into[0][i]));
    }
    const double played1 =
        game.SideCost(Side::kOne, s.x[0][i], s.u_into[0][i]);
    EXPECT_NEAR(Regret(game, trace, Side::kOne, i, 1), played1 - best1, 1e-14);
    double best2 = 1e300;
    for (int q = 0; q < 8; ++q) {
      best2 = std::min(best2, game.SideCost(Side::kTwo, s.u_into[1][i],
                                            Vector::Unit(8, q)));
    }
    const double played2 =
        game.SideCost(Side::kTwo, s.u_into[1][i], s.x[1][i]);
    EXPECT_NEAR(Regret(game, trace, Side::kTwo, i, 1), played2 - best2, 1e-14);
  }
  EXPECT_THROW(Regret(game, trace, Side::kOne, 0, 6), ParameterError);
}

TEST(Regret, SmoothGameUsesHistoryMinimizer) {
  const SubnetworkZeroSumGame game = BuildPowerAllocationGame();
  RunOptions options;
  options.horizon = 200;
  options.metric_stride = 100;
  options.compute_gap = false;
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, RingSchedule(6, 6, 3),
                                    StepSchedule::Power(0.5), options);
  for (const MetricRow& row : trace.metrics) {
    ASSERT_TRUE(row.avg_regret.has_value());
    EXPECT_NEAR(*row.avg_regret * row.t,
                Regret(game, trace, row.side, row.agent, row.t), 1e-7);
  }
  // A brute-force grid over the simplex cannot beat the certified minimum.
  const auto& history = trace.opponent_history[0][2];
  const double regret = Regret(game, trace, Side::kOne, 2, 200);
  double played = 0.0;
  for (double f : trace.played_cost[0][2]) played += f;
  for (int a = 0; a <= 40; ++a) {
    for (int b = 0; a + b <= 40; ++b) {
      const Vector y = Vec({a / 40.0, b / 40.0, (40 - a - b) / 40.0});
      double total = 0.0;
      for (const Vector& u : history) {
        total += game.SideCost(Side::kOne, y, u);
      }
      EXPECT_LE(played - total, regret + 1e-6);
    }
  }
}

TEST(Regret, SmoothGameWithoutHistoryIsUnsupported) {
  const SubnetworkZeroSumGame game = BuildPowerAllocationGame();
  RunOptions options;
  options.horizon = 10;
  options.compute_regret = false;
  const SimulationTrace trace = subzero::Run(game, kEntropyPair, RingSchedule(6, 6, 3),
                                    StepSchedule::Power(0.5), options);
  EXPECT_THROW(Regret(game, trace, Side::kOne, 0, 10), CapabilityError);
}

TEST(Run, DeskBoundsHoldOnShortRun) {
  const Experiment e = DeskExperiment();
  RunOptions options;
  options.horizon = 300;
  options.init = e.init;
  const SimulationTrace trace =
      subzero::Run(e.game, e.geometry, e.schedule, e.steps, options);
  for (Side side : kBothSides) {
    const int l = SideIndex(side);
    const std::vector<double> h =
        ConsensusBoundSeries(trace.constants, side, e.steps, 300);
    const std::vector<double> r =
        RegretBoundSeries(trace.constants, e.steps, side, 300);
    for (int t = 1; t <= 300; ++t) {
      for (int k = 0; k < 3; ++k) {
        EXPECT_LE(trace.consensus[l][k][t - 1], h[t - 1]);
      }
      for (int i = 0; i < trace.num_agents[l]; ++i) {
        EXPECT_LE(trace.regret[l][i][t - 1], r[t - 1]);
      }
    }
  }
}

TEST(Run, DeterministicMetrics) {
  const Experiment e = DeskExperiment();
  RunOptions options;
  options.horizon = 200;
  options.metric_stride = 20;
  options.init = e.init;
  const std::string a = FormatMetricsCsv(
      subzero::Run(e.game, e.geometry, e.schedule, e.steps, options).metrics);
  const std::string b = FormatMetricsCsv(
      subzero::Run(e.game, e.geometry, e.schedule, e.steps, options).metrics);
  EXPECT_EQ(a, b);
}

TEST(Run, RejectsMismatchedInputs) {
  const SubnetworkZeroSumGame game = MakeGame(MatchingPennies(2));
  RunOptions options;
  options.horizon = 5;
  EXPECT_THROW(subzero::Run(game, kEntropyPair, RingSchedule(3, 3, 1),
                   StepSchedule::Power(0.5), options),
               InvalidInputError);
  options.init = {AgentPoints(2, Vec({1.0, 0.0})), AgentPoints{}};
  EXPECT_THROW(subzero::Run(game, kEntropyPair, RingSchedule(2, 2, 1),
                   StepSchedule::Power(0.5), options),
               SingularReferenceError);
}

}  // namespace
}  // namespace subzero
