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

#include "subzero/error.h"
#include "subzero/geometry.h"
#include "subzero/oracles.h"
#include "subzero/rng.h"
#include "test_util.h"

namespace subzero {
namespace {

using testing::RandomInteriorPoint;
using testing::RandomNormal;
using testing::RandomSimplexPoint;

const BregmanGeometry kEuclid = BregmanGeometry::Euclidean();
const BregmanGeometry kEntropy = BregmanGeometry::NegativeEntropy();

Vector Vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  int k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

TEST(Divergence, IdentityIsZero) {
  const Vector x = Vec({0.2, 0.3, 0.5});
  EXPECT_EQ(kEuclid.Divergence(x, x), 0.0);
  EXPECT_NEAR(kEntropy.Divergence(x, x), 0.0, 1e-16);
}

TEST(Divergence, EuclideanOrthogonalVertices) {
  EXPECT_DOUBLE_EQ(kEuclid.Divergence(Vec({1.0, 0.0}), Vec({0.0, 1.0})), 1.0);
}

TEST(Divergence, EntropyIsKullbackLeibler) {
  const double d = kEntropy.Divergence(Vec({0.5, 0.5}), Vec({0.25, 0.75}));
  EXPECT_NEAR(d, 0.1438410, 1e-7);
  EXPECT_NEAR(d, 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
}

TEST(Divergence, EntropyRejectsZeroReference) {
  EXPECT_THROW(kEntropy.Divergence(Vec({0.5, 0.5}), Vec({1.0, 0.0})),
               SingularReferenceError);
}

TEST(Divergence, StrongConvexityLowerBound) {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const int dim = 2 + k % 5;
    const Vector x = RandomSimplexPoint(rng, dim);
    const Vector y = RandomSimplexPoint(rng, dim);
    EXPECT_GE(kEuclid.Divergence(x, y),
              0.5 * std::pow(kEuclid.PrimalNorm(x - y), 2) - 1e-12);
    EXPECT_GE(kEntropy.Divergence(x, y),
              0.5 * std::pow(kEntropy.PrimalNorm(x - y), 2) - 1e-9);
  }
}

TEST(Divergence, ConvexInSecondArgument) {
  Rng rng(2);
  for (int k = 0; k < 500; ++k) {
    const Vector x = RandomSimplexPoint(rng, 4);
    const Vector y1 = RandomSimplexPoint(rng, 4);
    const Vector y2 = RandomSimplexPoint(rng, 4);
    const double w = rng.Uniform();
    for (const BregmanGeometry& geom : {kEuclid, kEntropy}) {
      EXPECT_LE(geom.Divergence(x, w * y1 + (1 - w) * y2),
                w * geom.Divergence(x, y1) + (1 - w) * geom.Divergence(x, y2) +
                    1e-12);
    }
  }
}

TEST(MirrorStep, ZeroGradientIsIdentity) {
  const ActionDomain d = ActionDomain::Simplex(3);
  const Vector v = Vec({0.2, 0.3, 0.5});
  EXPECT_TRUE(kEuclid.MirrorStep(d, v, Vector::Zero(3), 0.7).isApprox(v, 1e-15));
  EXPECT_TRUE(
      kEntropy.MirrorStep(d, v, Vector::Zero(3), 0.7).isApprox(v, 1e-15));
}

TEST(MirrorStep, EntropyClosedForm) {
  const Vector x = kEntropy.MirrorStep(ActionDomain::Simplex(2),
                                       Vec({0.5, 0.5}),
                                       Vec({std::log(2.0), 0.0}), 1.0);
  EXPECT_NEAR(x[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(x[1], 2.0 / 3.0, 1e-15);
}

TEST(MirrorStep, EntropyShiftInvariance) {
  const ActionDomain d = ActionDomain::Simplex(4);
  const Vector v = Vector::Constant(4, 0.25);
  EXPECT_TRUE(kEntropy.MirrorStep(d, v, Vector::Constant(4, 3.7), 0.9)
                  .isApprox(v, 1e-15));
}

TEST(MirrorStep, RejectsBadArguments) {
  const ActionDomain d = ActionDomain::Simplex(2);
  EXPECT_THROW(kEuclid.MirrorStep(d, Vec({0.5, 0.5}), Vec({1.0, 0.0}), 0.0),
               ParameterError);
  EXPECT_THROW(kEntropy.MirrorStep(d, Vec({0.5, 0.5}), Vec({1.0, 0.0}), -1.0),
               ParameterError);
  EXPECT_THROW(kEntropy.MirrorStep(d, Vec({1.0, 0.0}), Vec({1.0, 0.0}), 1.0),
               SingularReferenceError);
  EXPECT_THROW(kEntropy.MirrorStep(ActionDomain::Box(Vec({0.0}), Vec({1.0})),
                                   Vec({0.5}), Vec({1.0}), 1.0),
               CapabilityError);
}

TEST(MirrorStep, EntropyOutputStaysOnTheSimplex) {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const int dim = 2 + k % 6;
    const Vector v = RandomSimplexPoint(rng, dim);
    const Vector g = RandomNormal(rng, dim, 10.0);
    const Vector x =
        kEntropy.MirrorStep(ActionDomain::Simplex(dim), v, g, rng.Uniform(0.01, 5));
    EXPECT_NEAR(x.sum(), 1.0, 1e-12);
    EXPECT_GT(x.minCoeff(), 0.0);
  }
}

TEST(MirrorStep, StepLengthBound) {
  Rng rng(4);
  for (int k = 0; k < 5000; ++k) {
    const int dim = 2 + k % 6;
    const ActionDomain d = ActionDomain::Simplex(dim);
    const Vector v = RandomSimplexPoint(rng, dim);
    const Vector g = RandomNormal(rng, dim, 3.0);
    const double alpha = rng.Uniform(1e-3, 2.0);
    for (const BregmanGeometry& geom : {kEuclid, kEntropy}) {
      const Vector x = geom.MirrorStep(d, v, g, alpha);
      EXPECT_LE(geom.PrimalNorm(v - x),
                alpha / geom.strong_convexity() * geom.DualNorm(g) + 1e-12);
    }
  }
}

TEST(MirrorStep, EuclideanEqualsProjectedStep) {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const int dim = 2 + k % 6;
    const Vector v = RandomSimplexPoint(rng, dim);
    const Vector g = RandomNormal(rng, dim);
    const double alpha = rng.Uniform(1e-3, 2.0);
    const Vector x = kEuclid.MirrorStep(ActionDomain::Simplex(dim), v, g, alpha);
    EXPECT_LE((x - ProjectOntoSimplex(v - alpha * g)).lpNorm<Eigen::Infinity>(),
              1e-12);
  }
}

TEST(MirrorStep, EuclideanBoxClamps) {
  const ActionDomain box = ActionDomain::Box(Vec({0.0, 0.0}), Vec({1.0, 2.0}));
  const Vector x = kEuclid.MirrorStep(box, Vec({0.5, 1.0}), Vec({-10.0, 0.25}),
                                      1.0);
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 0.75);
}

TEST(MirrorStep, EntropyAgreesWithGenericProxSolver) {
  Rng rng(6);
  for (int k = 0; k < 1000; ++k) {
    const int dim = 2 + k % 5;
    const ActionDomain d = ActionDomain::Simplex(dim);
    const Vector v = RandomInteriorPoint(rng, dim, 1e-3);
    const Vector g = RandomNormal(rng, dim);
    const double alpha = rng.Uniform(1e-2, 2.0);
    const Vector closed = kEntropy.MirrorStep(d, v, g, alpha);
    const Vector generic = GenericProxSolve(kEntropy, d, v, g, alpha);
    EXPECT_LE((closed - generic).lpNorm<1>(), 1e-8);
  }
}

TEST(Projection, PointOnSimplexIsFixed) {
  const Vector y = Vec({0.1, 0.6, 0.3});
  EXPECT_TRUE(ProjectOntoSimplex(y).isApprox(y, 1e-15));
}

TEST(Projection, KnownCases) {
  const Vector a = ProjectOntoSimplex(Vec({1.2, -0.2}));
  EXPECT_NEAR(a[0], 1.0, 1e-15);
  EXPECT_NEAR(a[1], 0.0, 1e-15);
  const Vector b = ProjectOntoSimplex(Vec({0.5, 0.5, 0.5}));
  for (int p = 0; p < 3; ++p) EXPECT_NEAR(b[p], 1.0 / 3.0, 1e-15);
}

TEST(Projection, OutputOnSimplexAndOptimal) {
  Rng rng(7);
  for (int k = 0; k < 500; ++k) {
    const int dim = 2 + k % 6;
    const Vector y = RandomNormal(rng, dim, 2.0);
    const Vector p = ProjectOntoSimplex(y);
    EXPECT_NEAR(p.sum(), 1.0, 1e-12);
    EXPECT_GE(p.minCoeff(), 0.0);
    // Variational inequality: <y - p, z - p> <= 0 for all simplex z,
    // checked at the vertices.
    for (int q = 0; q < dim; ++q) {
      EXPECT_LE((y - p).dot(Vector::Unit(dim, q) - p), 1e-12);
    }
  }
}

TEST(Norms, PairsMatchGeometry) {
  const Vector v = Vec({3.0, -4.0});
  EXPECT_DOUBLE_EQ(kEuclid.PrimalNorm(v), 5.0);
  EXPECT_DOUBLE_EQ(kEuclid.DualNorm(v), 5.0);
  EXPECT_DOUBLE_EQ(kEntropy.PrimalNorm(v), 7.0);
  EXPECT_DOUBLE_EQ(kEntropy.DualNorm(v), 4.0);
}

}  // namespace
}  // namespace subzero
