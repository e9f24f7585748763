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

#include "subzero/geometry.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <fmt/format.h>

#include "subzero/error.h"

namespace subzero {
namespace {

void RequirePositive(const Vector& y, std::string_view what) {
  if (y.size() == 0 || !(y.minCoeff() > 0.0)) {
    throw SingularReferenceError(fmt::format(
        "negative-entropy geometry needs a strictly positive {}", what));
  }
}

double XLogX(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::string_view BregmanGeometry::name() const {
  return kind_ == GeometryKind::kEuclidean ? "euclidean" : "entropy";
}

double BregmanGeometry::Regularizer(const Vector& x) const {
  if (kind_ == GeometryKind::kEuclidean) return 0.5 * x.squaredNorm();
  double s = 0.0;
  for (Eigen::Index p = 0; p < x.size(); ++p) s += XLogX(x[p]);
  return s;
}

Vector BregmanGeometry::RegularizerGradient(const Vector& x) const {
  if (kind_ == GeometryKind::kEuclidean) return x;
  RequirePositive(x, "point for the mirror map");
  return x.array().log() + 1.0;
}

double BregmanGeometry::Divergence(const Vector& x, const Vector& y) const {
  if (x.size() != y.size()) {
    throw InvalidInputError("divergence arguments differ in dimension");
  }
  if (kind_ == GeometryKind::kEuclidean) return 0.5 * (x - y).squaredNorm();
  RequirePositive(y, "reference point");
  // Generalized KL; reduces to sum x log(x / y) when both sum to one.
  double d = 0.0;
  for (Eigen::Index p = 0; p < x.size(); ++p) {
    if (x[p] > 0.0) d += x[p] * std::log(x[p] / y[p]);
    d += y[p] - x[p];
  }
  return std::max(d, 0.0);
}

Vector BregmanGeometry::MirrorStep(const ActionDomain& domain, const Vector& v,
                                   const Vector& g, double alpha) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError(fmt::format("step size {} must be positive", alpha));
  }
  if (v.size() != domain.dim() || g.size() != domain.dim()) {
    throw InvalidInputError("mirror step dimension mismatch");
  }
  if (kind_ == GeometryKind::kEuclidean) {
    return ProjectOntoDomain(domain, v - alpha * g);
  }
  if (!domain.is_simplex()) {
    throw CapabilityError("negative-entropy geometry requires a simplex");
  }
  RequirePositive(v, "reference point");
  // Softmax of log v - alpha g, shifted by its max to stay finite.
  Vector w = v.array().log() - alpha * g.array();
  w.array() -= w.maxCoeff();
  Vector x = w.array().exp();
  x /= x.sum();
  if (x.minCoeff() < kEntropyFloor) {
    x = x.cwiseMax(kEntropyFloor);
    x /= x.sum();
  }
  return x;
}

Vector ProjectOntoSimplex(const Vector& y) {
  const Eigen::Index n = y.size();
  if (n == 0) throw InvalidInputError("cannot project an empty vector");
  if (!y.allFinite()) throw InvalidInputError("cannot project non-finite y");
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) tau = candidate;
  }
  Vector x = (y.array() - tau).cwiseMax(0.0);
  // Re-normalize away the last ulp of drift so the output sums to one.
  const double s = x.sum();
  if (s > 0.0) x /= s;
  return x;
}

Vector ProjectOntoDomain(const ActionDomain& domain, const Vector& y) {
  if (y.size() != domain.dim()) {
    throw InvalidInputError("projection dimension mismatch");
  }
  if (domain.is_simplex()) return ProjectOntoSimplex(y);
  return y.cwiseMax(domain.lower()).cwiseMin(domain.upper());
}

}  // namespace subzero
