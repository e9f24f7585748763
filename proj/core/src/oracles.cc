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

#include "subzero/oracles.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <fmt/format.h>

#include "subzero/engine.h"
#include "subzero/error.h"
#include "subzero/rng.h"

namespace subzero {
namespace {

constexpr double kMinSpectralStep = 1e-12;
constexpr double kMaxSpectralStep = 1e12;
constexpr int kNonmonotoneMemory = 10;
constexpr double kArmijo = 1e-4;

Vector RandomPoint(const ActionDomain& domain, Rng& rng) {
  Vector x(domain.dim());
  if (domain.is_simplex()) {
    for (int p = 0; p < domain.dim(); ++p) x[p] = rng.Exponential();
    return x / x.sum();
  }
  for (int p = 0; p < domain.dim(); ++p) {
    x[p] = rng.Uniform(domain.lower()[p], domain.upper()[p]);
  }
  return x;
}

double Residual(const ActionDomain& domain, const Vector& x, const Vector& g) {
  return (ProjectOntoDomain(domain, x - g) - x).norm();
}

// Spectral projected gradient with a nonmonotone Armijo search.
MinimizerResult SpectralProjectedGradient(const ConvexObjective& f,
                                          const ActionDomain& domain,
                                          const Vector& start, double tol,
                                          int max_iterations) {
  Vector x = ProjectOntoDomain(domain, start);
  double fx = f.value(x);
  Vector g = f.gradient(x);
  double residual = Residual(domain, x, g);
  double step = 1.0 / std::max(residual, 1e-8);
  step = std::clamp(step, kMinSpectralStep, kMaxSpectralStep);
  std::deque<double> recent = {fx};
  for (int k = 0; k < max_iterations && residual > tol; ++k) {
    const Vector d = ProjectOntoDomain(domain, x - step * g) - x;
    const double slope = g.dot(d);
    const double reference = *std::max_element(recent.begin(), recent.end());
    const double slack = 1e-15 * std::max(1.0, std::abs(reference));
    double lambda = 1.0;
    Vector trial = x + d;
    double f_trial = f.value(trial);
    while (!(f_trial <= reference + kArmijo * lambda * slope + slack)) {
      const double curvature = f_trial - fx - lambda * slope;
      double next = curvature > 0.0 ? -0.5 * lambda * lambda * slope / curvature
                                    : 0.5 * lambda;
      if (!(next >= 0.1 * lambda && next <= 0.5 * lambda)) next = 0.5 * lambda;
      lambda = next;
      if (lambda < 1e-18) break;
      trial = x + lambda * d;
      f_trial = f.value(trial);
    }
    if (lambda < 1e-18) break;
    // The convex combination can drift off the simplex by an ulp.
    trial = ProjectOntoDomain(domain, trial);
    const Vector g_trial = f.gradient(trial);
    const Vector s = trial - x;
    const Vector y = g_trial - g;
    const double sy = s.dot(y);
    step = sy > 0.0 ? std::clamp(s.squaredNorm() / sy, kMinSpectralStep,
                                 kMaxSpectralStep)
                    : kMaxSpectralStep;
    x = trial;
    fx = f.value(x);
    g = g_trial;
    residual = Residual(domain, x, g);
    recent.push_back(fx);
    if (static_cast<int>(recent.size()) > kNonmonotoneMemory) {
      recent.pop_front();
    }
  }
  return {x, fx, residual, 0};
}

}  // namespace

MinimizerResult CertifiedMinOverDomain(const ConvexObjective& f,
                                       const ActionDomain& domain,
                                       const MinimizerOptions& options) {
  if (options.starts < 1) throw ParameterError("need at least one start");
  if (!(options.tolerance > 0.0)) {
    throw ParameterError("minimizer tolerance must be positive");
  }
  Rng rng(options.seed, "multistart");
  MinimizerResult best;
  bool have_best = false;
  double smallest_residual = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.starts; ++s) {
    const Vector start = s == 0 ? domain.Center() : RandomPoint(domain, rng);
    MinimizerResult r = SpectralProjectedGradient(
        f, domain, start, options.tolerance, options.max_iterations);
    r.start = s;
    smallest_residual = std::min(smallest_residual, r.residual);
    if (!(r.residual <= options.tolerance)) continue;
    if (!have_best || r.value < best.value) {
      best = std::move(r);
      have_best = true;
    }
  }
  if (!have_best) {
    throw OracleError(
        fmt::format("no start reached stationarity residual {} (best {})",
                    options.tolerance, smallest_residual),
        smallest_residual);
  }
  return best;
}

BestResponse BestResponseVertex(const MultilinearGame& game, Side side,
                                const Vector& opponent) {
  const Matrix& a = game.mean_cost_matrix(side);
  const Vector values =
      side == Side::kOne ? Vector(a * opponent) : Vector(a.transpose() * opponent);
  BestResponse best{0, values[0]};
  for (int p = 1; p < values.size(); ++p) {
    if (values[p] < best.value) best = {p, values[p]};
  }
  return best;
}

NeCertificate SolveNeCentralized(const SubnetworkZeroSumGame& game,
                                 const GeometryPair& geometry,
                                 const NeSolverOptions& options) {
  if (!(options.tolerance > 0.0) || options.max_iterations < 1 ||
      options.check_every < 1) {
    throw ParameterError("invalid NE solver options");
  }
  const std::array<Norm, 2> norms = {geometry[0].norm(), geometry[1].norm()};
  const double lipschitz = std::max(game.GlobalLipschitz(norms), 1e-12);
  const ActionDomain& d1 = game.domain(Side::kOne);
  const ActionDomain& d2 = game.domain(Side::kTwo);

  auto field = [&](const Vector& a, const Vector& b) {
    return std::array<Vector, 2>{game.GlobalGradient(Side::kOne, a, b),
                                 -game.GlobalGradient(Side::kTwo, a, b)};
  };

  std::array<Vector, 2> x = {d1.Center(), d2.Center()};
  std::array<Vector, 2> avg = x;
  double weight = 0.0;
  double gamma = 1.0 / lipschitz;
  const double gamma_max = 1e6 / lipschitz;

  NeCertificate best;
  best.gap = std::numeric_limits<double>::infinity();
  best.tolerance = options.tolerance;

  auto consider = [&](const Vector& a, const Vector& b, int iteration) {
    const double g = Gap(game, a, b, options.inner_tolerance);
    if (g < best.gap) {
      best.x1 = a;
      best.x2 = b;
      best.gap = g;
      best.iterations = iteration;
    }
  };

  for (int k = 1; k <= options.max_iterations; ++k) {
    const std::array<Vector, 2> fx = field(x[0], x[1]);
    std::array<Vector, 2> y;
    std::array<Vector, 2> next;
    for (int attempt = 0;; ++attempt) {
      y = {geometry[0].MirrorStep(d1, x[0], fx[0], gamma),
           geometry[1].MirrorStep(d2, x[1], fx[1], gamma)};
      const std::array<Vector, 2> fy = field(y[0], y[1]);
      next = {geometry[0].MirrorStep(d1, x[0], fy[0], gamma),
              geometry[1].MirrorStep(d2, x[1], fy[1], gamma)};
      double lhs = 0.0;
      double rhs = 0.0;
      for (int l = 0; l < 2; ++l) {
        lhs += gamma * (fy[l] - fx[l]).dot(y[l] - next[l]);
        rhs += geometry[l].Divergence(next[l], y[l]) +
               geometry[l].Divergence(y[l], x[l]);
      }
      if (lhs <= rhs + 1e-15 || attempt >= 60) break;
      gamma *= 0.5;
    }
    weight += gamma;
    for (int l = 0; l < 2; ++l) avg[l] += (gamma / weight) * (y[l] - avg[l]);
    x = std::move(next);
    gamma = std::min(gamma * 1.2, gamma_max);

    if (k % options.check_every == 0 || k == options.max_iterations) {
      consider(x[0], x[1], k);
      consider(avg[0], avg[1], k);
      if (best.gap <= options.tolerance) break;
    }
  }
  best.final_x1 = x[0];
  best.final_x2 = x[1];
  if (!(best.gap <= options.tolerance)) {
    throw CertificateError(
        fmt::format("NE solver reached gap {} > tolerance {} after {} "
                    "iterations",
                    best.gap, options.tolerance, options.max_iterations),
        best.gap);
  }
  best.value = game.GlobalCost(best.x1, best.x2);
  return best;
}

Vector BruteForceProx(const BregmanGeometry& geometry,
                      const ActionDomain& domain, const Vector& v,
                      const Vector& g, double alpha, double grid_spacing) {
  const int dim = domain.dim();
  if (dim > 3) {
    throw CapabilityError(
        fmt::format("grid prox supports at most 3 dimensions, got {}", dim));
  }
  if (!(alpha > 0.0)) throw ParameterError("step size must be positive");
  if (!(grid_spacing > 0.0)) throw ParameterError("grid spacing must be positive");
  auto objective = [&](const Vector& x) {
    return g.dot(x - v) + geometry.Divergence(x, v) / alpha;
  };
  Vector best;
  double best_value = std::numeric_limits<double>::infinity();
  auto visit = [&](const Vector& x) {
    const double value = objective(x);
    if (value < best_value) {
      best_value = value;
      best = x;
    }
  };
  Vector x(dim);
  if (domain.is_simplex()) {
    const int steps = static_cast<int>(std::lround(1.0 / grid_spacing));
    if (dim == 1) {
      visit(Vector::Ones(1));
    } else if (dim == 2) {
      for (int a = 0; a <= steps; ++a) {
        x << double(a) / steps, double(steps - a) / steps;
        visit(x);
      }
    } else {
      for (int a = 0; a <= steps; ++a) {
        for (int b = 0; a + b <= steps; ++b) {
          x << double(a) / steps, double(b) / steps,
              double(steps - a - b) / steps;
          visit(x);
        }
      }
    }
    return best;
  }
  std::vector<int> counts(dim);
  for (int p = 0; p < dim; ++p) {
    counts[p] = std::max(
        1, static_cast<int>(std::ceil(
               (domain.upper()[p] - domain.lower()[p]) / grid_spacing)));
  }
  std::vector<int> index(dim, 0);
  while (true) {
    for (int p = 0; p < dim; ++p) {
      x[p] = domain.lower()[p] + (domain.upper()[p] - domain.lower()[p]) *
                                     index[p] / counts[p];
    }
    visit(x);
    int p = 0;
    while (p < dim && ++index[p] > counts[p]) index[p++] = 0;
    if (p == dim) break;
  }
  return best;
}

Vector GenericProxSolve(const BregmanGeometry& geometry,
                        const ActionDomain& domain, const Vector& v,
                        const Vector& g, double alpha) {
  if (!(alpha > 0.0)) throw ParameterError("step size must be positive");
  if (!domain.is_simplex()) {
    if (geometry.kind() == GeometryKind::kNegativeEntropy) {
      throw CapabilityError("negative-entropy geometry requires a simplex");
    }
    return (v - alpha * g).cwiseMax(domain.lower()).cwiseMin(domain.upper());
  }
  // Dual point of the unconstrained step; the simplex multiplier shifts it.
  Vector c;
  if (geometry.kind() == GeometryKind::kNegativeEntropy) {
    if (!(v.minCoeff() > 0.0)) {
      throw SingularReferenceError("prox reference point must be positive");
    }
    c = v.array().log() - alpha * g.array();
  } else {
    c = v - alpha * g;
  }
  auto primal = [&](double lambda) -> Vector {
    if (geometry.kind() == GeometryKind::kNegativeEntropy) {
      return (c.array() - lambda).exp();
    }
    return (c.array() - lambda).cwiseMax(0.0);
  };
  double lo = c.maxCoeff() - 1.0 - std::log(static_cast<double>(c.size()));
  double hi = c.maxCoeff() + std::log(static_cast<double>(c.size())) + 1.0;
  if (geometry.kind() == GeometryKind::kEuclidean) {
    lo = c.minCoeff() - 1.0;
    hi = c.maxCoeff();
  }
  for (int k = 0; k < 400; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (primal(mid).sum() > 1.0 ? lo : hi) = mid;
  }
  return primal(0.5 * (lo + hi));
}

}  // namespace subzero
