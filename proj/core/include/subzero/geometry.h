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

#ifndef SUBZERO_GEOMETRY_H_
#define SUBZERO_GEOMETRY_H_

#include <array>
#include <string_view>

#include "subzero/game.h"

namespace subzero {

enum class GeometryKind { kEuclidean, kNegativeEntropy };

// Components of an entropy iterate are never allowed below this value.
inline constexpr double kEntropyFloor = 1e-15;

// A strongly convex regularizer psi together with its Bregman divergence and
// the associated prox ("mirror") step
//
//   argmin_{x in domain} <g, x - v> + D_psi(x, v) / alpha.
//
// Euclidean: psi = |x|_2^2 / 2, norm pair (l2, l2), sigma = 1.
// Negative entropy: psi = sum x log x on the simplex, norm pair (l1, l-inf),
// sigma = 1.
class BregmanGeometry {
 public:
  static BregmanGeometry Euclidean() {
    return BregmanGeometry(GeometryKind::kEuclidean);
  }
  static BregmanGeometry NegativeEntropy() {
    return BregmanGeometry(GeometryKind::kNegativeEntropy);
  }

  GeometryKind kind() const { return kind_; }
  std::string_view name() const;
  double strong_convexity() const { return 1.0; }
  Norm norm() const {
    return kind_ == GeometryKind::kEuclidean ? Norm::kL2 : Norm::kL1;
  }
  double PrimalNorm(const Vector& v) const {
    return subzero::PrimalNorm(norm(), v);
  }
  double DualNorm(const Vector& v) const {
    return subzero::DualNorm(norm(), v);
  }

  double Regularizer(const Vector& x) const;
  Vector RegularizerGradient(const Vector& x) const;

  // psi(x) - psi(y) - <grad psi(y), x - y>. For entropy on the simplex this
  // is KL(x || y); y must be strictly positive.
  double Divergence(const Vector& x, const Vector& y) const;

  // Throws ParameterError for alpha <= 0, SingularReferenceError for an
  // entropy reference point with a zero component, CapabilityError for
  // entropy on a non-simplex domain.
  Vector MirrorStep(const ActionDomain& domain, const Vector& v,
                    const Vector& g, double alpha) const;

 private:
  explicit BregmanGeometry(GeometryKind kind) : kind_(kind) {}
  GeometryKind kind_;
};

// Euclidean projection onto the probability simplex (sort and threshold).
// Geometry of side one and side two.
using GeometryPair = std::array<BregmanGeometry, 2>;

Vector ProjectOntoSimplex(const Vector& y);

// Euclidean projection onto a domain: simplex projection or clamping.
Vector ProjectOntoDomain(const ActionDomain& domain, const Vector& y);

}  // namespace subzero

#endif  // SUBZERO_GEOMETRY_H_
