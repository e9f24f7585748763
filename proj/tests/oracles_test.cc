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

#include <gtest/gtest.h>

#include "subzero/engine.h"
#include "subzero/error.h"
#include "subzero/geometry.h"
#include "subzero/oracles.h"
#include "subzero/presets.h"
#include "test_util.h"

namespace subzero {
namespace {

using testing::RandomInteriorPoint;
using testing::RandomNormal;
using testing::RandomSimplexPoint;

const GeometryPair kEntropyPair = {BregmanGeometry::NegativeEntropy(),
                                   BregmanGeometry::NegativeEntropy()};

Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  int k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

ConvexObjective Linear(const Vector& c) {
  return {[c](const Vector& x) { return c.dot(x); },
          [c](const Vector&) { return c; }};
}

TEST(CertifiedMin, LinearMatchesVertexEnumeration) {
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    const int dim = 2 + k % 6;
    const Vector c = RandomNormal(rng, dim);
    const MinimizerResult r =
        CertifiedMinOverDomain(Linear(c), ActionDomain::Simplex(dim));
    EXPECT_NEAR(r.value, c.minCoeff(), 1e-9);
    EXPECT_LE(r.residual, 1e-9);
  }
}

TEST(CertifiedMin, ConstantFunction) {
  const ConvexObjective f = {[](const Vector&) { return 2.5; },
                             [](const Vector& x) -> Vector {
                               return Vector::Zero(x.size());
                             }};
  const MinimizerResult r = CertifiedMinOverDomain(f, ActionDomain::Simplex(4));
  EXPECT_EQ(r.value, 2.5);
  EXPECT_TRUE(ActionDomain::Simplex(4).Contains(r.point));
}

TEST(CertifiedMin, QuadraticWithInteriorCenter) {
  const Vector c = Vec({0.1, 0.2, 0.3, 0.4});
  const ConvexObjective f = {
      [c](const Vector& x) { return (x - c).squaredNorm(); },
      [c](const Vector& x) -> Vector { return 2.0 * (x - c); }};
  const MinimizerResult r = CertifiedMinOverDomain(f, ActionDomain::Simplex(4));
  EXPECT_LE((r.point - c).norm(), 1e-9);
  const ActionDomain box = ActionDomain::Box(Vector::Zero(4), Vector::Ones(4));
  EXPECT_LE((CertifiedMinOverDomain(f, box).point - c).norm(), 1e-9);
}

TEST(CertifiedMin, DeterministicAndRejectsBadOptions) {
  const ConvexObjective f = Linear(Vec({0.3, -0.2, 0.1}));
  MinimizerOptions options;
  options.seed = 77;
  const MinimizerResult a =
      CertifiedMinOverDomain(f, ActionDomain::Simplex(3), options);
  const MinimizerResult b =
      CertifiedMinOverDomain(f, ActionDomain::Simplex(3), options);
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.start, b.start);
  options.starts = 0;
  EXPECT_THROW(CertifiedMinOverDomain(f, ActionDomain::Simplex(3), options),
               ParameterError);
}

TEST(CertifiedMin, FailsLoudlyWithoutConvergence) {
  const Vector c = Vec({0.1, 0.2, 0.3, 0.4});
  const ConvexObjective f = {
      [c](const Vector& x) { return (x - c).squaredNorm(); },
      [c](const Vector& x) -> Vector { return 2.0 * (x - c); }};
  MinimizerOptions options;
  options.max_iterations = 1;
  options.tolerance = 1e-15;
  EXPECT_THROW(CertifiedMinOverDomain(f, ActionDomain::Simplex(4), options),
               OracleError);
}

TEST(BestResponse, TiesGoToLowestIndex) {
  const MultilinearGame game = BuildMatrixGame(Matrix::Zero(3, 2));
  const BestResponse r = BestResponseVertex(game, Side::kOne, Vec({0.5, 0.5}));
  EXPECT_EQ(r.action, 0);
  EXPECT_EQ(r.value, 0.0);
}

TEST(BestResponse, MatchingPennies) {
  const BestResponse r =
      BestResponseVertex(MatchingPennies(), Side::kOne, Vec({1.0, 0.0}));
  EXPECT_EQ(r.action, 1);
  EXPECT_DOUBLE_EQ(r.value, -1.0);
}

TEST(BestResponse, SingleActionInterdiction) {
  const MultilinearGame game = BuildInterdictionGame(
      1, 1, 1, Matrix::Ones(1, 1), {Vector::Constant(1, 0.35)});
  const BestResponse r = BestResponseVertex(game, Side::kOne, Vec({1.0}));
  EXPECT_EQ(r.action, 0);
  EXPECT_DOUBLE_EQ(r.value, 0.35);
}

TEST(BestResponse, AgreesWithCertifiedMinimizer) {
  Rng rng(2);
  const MultilinearGame ml = BuildInterdictionPreset(3, 6, 9, 5);
  const SubnetworkZeroSumGame game = MakeGame(ml);
  for (int k = 0; k < 20; ++k) {
    const Vector x2 = RandomSimplexPoint(rng, 9);
    const BestResponse br = BestResponseVertex(ml, Side::kOne, x2);
    const ConvexObjective f = {
        [&](const Vector& x) { return game.GlobalCost(x, x2); },
        [&](const Vector& x) { return game.GlobalGradient(Side::kOne, x, x2); }};
    EXPECT_NEAR(CertifiedMinOverDomain(f, ActionDomain::Simplex(6)).value,
                br.value, 1e-9);
    const Vector x1 = RandomSimplexPoint(rng, 6);
    const BestResponse br2 = BestResponseVertex(ml, Side::kTwo, x1);
    EXPECT_NEAR(br2.value, -(ml.mean_cost_matrix(Side::kOne).transpose() * x1)
                                .maxCoeff(),
                1e-14);
  }
}

TEST(SolveNe, MatchingPennies) {
  const NeCertificate c =
      SolveNeCentralized(MakeGame(MatchingPennies()), kEntropyPair);
  EXPECT_NEAR(c.value, 0.0, 1e-6);
  EXPECT_LE(c.gap, 1e-6);
  EXPECT_LE((c.x1 - Vec({0.5, 0.5})).norm(), 1e-6);
  EXPECT_LE((c.x2 - Vec({0.5, 0.5})).norm(), 1e-6);
}

TEST(SolveNe, TwoByTwoIndifference) {
  const Matrix a = (Matrix(2, 2) << 3, 0, 1, 2).finished();
  const NeCertificate c =
      SolveNeCentralized(MakeGame(BuildMatrixGame(a)), kEntropyPair);
  EXPECT_NEAR(c.value, 1.5, 1e-6);
  EXPECT_LE(c.gap, 1e-6);
  // For this matrix gap >= 2 |p - 1/4| + |q - 1/2| with p = x1[0], q = x2[0].
  EXPECT_NEAR(c.x1[0], 0.25, 1e-6);
  EXPECT_NEAR(c.x2[0], 0.5, 1e-6);
}

TEST(SolveNe, PowerAllocationCertificate) {
  const SubnetworkZeroSumGame game = BuildPowerAllocationGame();
  const NeCertificate c = SolveNeCentralized(game, kEntropyPair);
  EXPECT_LE(c.gap, 1e-6);
  EXPECT_NEAR(c.value, game.GlobalCost(c.x1, c.x2), 1e-15);
  // Unilateral deviations do not improve either side.
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const Vector x = RandomSimplexPoint(rng, 3);
    EXPECT_LE(c.value, game.GlobalCost(x, c.x2) + 1e-6);
    EXPECT_GE(c.value, game.GlobalCost(c.x1, x) - 1e-6);
  }
}

TEST(SolveNe, FailsWithBestGap) {
  NeSolverOptions options;
  options.max_iterations = 3;
  options.check_every = 1;
  options.tolerance = 1e-14;
  try {
    SolveNeCentralized(MakeGame(BuildInterdictionPreset(5, 10, 15, 7)),
                       kEntropyPair, options);
    FAIL() << "expected CertificateError";
  } catch (const CertificateError& e) {
    EXPECT_GT(e.best_gap(), 1e-14);
  }
}

TEST(SolveNe, Deterministic) {
  const SubnetworkZeroSumGame game =
      MakeGame(BuildInterdictionPreset(5, 10, 15, 7));
  const NeCertificate a = SolveNeCentralized(game, kEntropyPair);
  const NeCertificate b = SolveNeCentralized(game, kEntropyPair);
  EXPECT_EQ(a.x1, b.x1);
  EXPECT_EQ(a.x2, b.x2);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(BruteForceProx, EntropyWithinTwoGridSpacings) {
  Rng rng(4);
  const BregmanGeometry geom = BregmanGeometry::NegativeEntropy();
  const ActionDomain d = ActionDomain::Simplex(3);
  for (int k = 0; k < 10; ++k) {
    const Vector v = RandomInteriorPoint(rng, 3, 0.02);
    const Vector g = RandomNormal(rng, 3);
    const double alpha = rng.Uniform(0.1, 1.5);
    const Vector grid = BruteForceProx(geom, d, v, g, alpha, 1e-2);
    EXPECT_LE((grid - geom.MirrorStep(d, v, g, alpha))
                  .lpNorm<Eigen::Infinity>(),
              2e-2);
  }
}

TEST(BruteForceProx, ZeroGradientGivesNearestGridPoint) {
  const Vector v = Vec({0.231, 0.342, 0.427});
  const Vector grid = BruteForceProx(BregmanGeometry::Euclidean(),
                                     ActionDomain::Simplex(3), v,
                                     Vector::Zero(3), 1.0, 1e-2);
  EXPECT_LE((grid - Vec({0.23, 0.34, 0.43})).norm(), 1e-12);
}

TEST(BruteForceProx, EuclideanMatchesProjection) {
  Rng rng(5);
  const BregmanGeometry geom = BregmanGeometry::Euclidean();
  const ActionDomain d = ActionDomain::Simplex(3);
  for (int k = 0; k < 100; ++k) {
    const Vector v = RandomSimplexPoint(rng, 3);
    const Vector g = RandomNormal(rng, 3);
    const double alpha = rng.Uniform(0.1, 1.0);
    const Vector grid = BruteForceProx(geom, d, v, g, alpha, 1e-2);
    EXPECT_LE((grid - ProjectOntoSimplex(v - alpha * g))
                  .lpNorm<Eigen::Infinity>(),
              2e-2);
  }
}

TEST(BruteForceProx, RejectsLargeDimensions) {
  EXPECT_THROW(BruteForceProx(BregmanGeometry::Euclidean(),
                              ActionDomain::Simplex(4),
                              Vector::Constant(4, 0.25), Vector::Zero(4), 1.0,
                              0.1),
               CapabilityError);
}

TEST(GenericProxSolve, EuclideanBoxAndSimplex) {
  Rng rng(6);
  const BregmanGeometry geom = BregmanGeometry::Euclidean();
  for (int k = 0; k < 200; ++k) {
    const Vector v = RandomSimplexPoint(rng, 4);
    const Vector g = RandomNormal(rng, 4);
    EXPECT_LE((GenericProxSolve(geom, ActionDomain::Simplex(4), v, g, 0.5) -
               ProjectOntoSimplex(v - 0.5 * g))
                  .lpNorm<1>(),
              1e-9);
  }
  const ActionDomain box = ActionDomain::Box(Vector::Zero(2), Vector::Ones(2));
  EXPECT_TRUE(GenericProxSolve(geom, box, Vec({0.5, 0.5}), Vec({1.0, -2.0}), 1.0)
                  .isApprox(Vec({0.0, 1.0})));
}

}  // namespace
}  // namespace subzero
