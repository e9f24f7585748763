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

#include "subzero/game.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "subzero/error.h"

namespace subzero {

double PrimalNorm(Norm norm, const Vector& v) {
  return norm == Norm::kL1 ? v.lpNorm<1>() : v.norm();
}

double DualNorm(Norm norm, const Vector& v) {
  return norm == Norm::kL1 ? v.lpNorm<Eigen::Infinity>() : v.norm();
}

// ----------------------------------------------------------------------------
// ActionDomain

ActionDomain ActionDomain::Simplex(int dim) {
  if (dim <= 0) {
    throw InvalidInputError(fmt::format("simplex dimension {} <= 0", dim));
  }
  return ActionDomain(Kind::kSimplex, dim, Vector::Zero(dim),
                      Vector::Ones(dim));
}

ActionDomain ActionDomain::Box(Vector lower, Vector upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw InvalidInputError("box bounds must be non-empty and equal length");
  }
  if (!lower.allFinite() || !upper.allFinite() ||
      (upper.array() < lower.array()).any()) {
    throw InvalidInputError("box bounds must be finite with lower <= upper");
  }
  const int dim = static_cast<int>(lower.size());
  return ActionDomain(Kind::kBox, dim, std::move(lower), std::move(upper));
}

bool ActionDomain::Contains(const Vector& x, double tol) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  if (kind_ == Kind::kSimplex) {
    return x.minCoeff() >= -tol && std::abs(x.sum() - 1.0) <= tol;
  }
  return ((x.array() >= lower_.array() - tol) &&
          (x.array() <= upper_.array() + tol))
      .all();
}

void ActionDomain::Require(const Vector& x, std::string_view what) const {
  if (!Contains(x)) {
    throw InvalidInputError(fmt::format(
        "{} is not in its action domain ({} of dimension {})", what,
        is_simplex() ? "simplex" : "box", dim_));
  }
}

Vector ActionDomain::Center() const {
  if (kind_ == Kind::kSimplex) return Vector::Constant(dim_, 1.0 / dim_);
  return 0.5 * (lower_ + upper_);
}

std::vector<Vector> ActionDomain::Vertices() const {
  std::vector<Vector> out;
  if (kind_ == Kind::kSimplex) {
    for (int p = 0; p < dim_; ++p) out.push_back(Vector::Unit(dim_, p));
    return out;
  }
  if (dim_ > 20) {
    throw CapabilityError("box vertex enumeration limited to 20 dimensions");
  }
  for (unsigned long mask = 0; mask < (1ul << dim_); ++mask) {
    Vector v(dim_);
    for (int k = 0; k < dim_; ++k) {
      v[k] = (mask >> k) & 1ul ? upper_[k] : lower_[k];
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ----------------------------------------------------------------------------
// AgentCost

AgentCost::AgentCost(Side side, int agent, Evaluator value, Gradient grad1,
                     Gradient grad2, LipschitzTable lipschitz)
    : side_(side),
      agent_(agent),
      value_(std::move(value)),
      grad1_(std::move(grad1)),
      grad2_(std::move(grad2)),
      lipschitz_(lipschitz) {
  for (double c : lipschitz_.own) {
    if (!(c >= 0.0)) throw InvalidInputError("negative Lipschitz constant");
  }
  for (double c : lipschitz_.other) {
    if (!(c >= 0.0)) throw InvalidInputError("negative Lipschitz constant");
  }
}

// ----------------------------------------------------------------------------
// MultilinearGame

namespace {

Matrix MeanOf(const std::vector<Matrix>& ms) {
  Matrix sum = Matrix::Zero(ms.front().rows(), ms.front().cols());
  for (const Matrix& m : ms) sum += m;
  return sum / static_cast<double>(ms.size());
}

// sup over the opponent's simplex of the dual norm of C * y (columns) or
// C^T * x (rows). The dual norm is convex, so the sup sits at a vertex.
double MaxColumnNorm(const Matrix& c, Norm norm) {
  double best = 0.0;
  for (Eigen::Index q = 0; q < c.cols(); ++q) {
    best = std::max(best, DualNorm(norm, c.col(q)));
  }
  return best;
}

double MaxRowNorm(const Matrix& c, Norm norm) {
  double best = 0.0;
  for (Eigen::Index p = 0; p < c.rows(); ++p) {
    best = std::max(best, DualNorm(norm, c.row(p).transpose()));
  }
  return best;
}

}  // namespace

MultilinearGame::MultilinearGame(std::vector<Matrix> side1_costs,
                                 std::vector<Matrix> side2_costs) {
  if (side1_costs.empty() || side2_costs.empty()) {
    throw InvalidInputError("each side needs at least one agent");
  }
  const Eigen::Index rows = side1_costs.front().rows();
  const Eigen::Index cols = side1_costs.front().cols();
  if (rows == 0 || cols == 0) {
    throw InvalidInputError("cost matrices must be non-empty");
  }
  for (const auto* list : {&side1_costs, &side2_costs}) {
    for (const Matrix& m : *list) {
      if (m.rows() != rows || m.cols() != cols) {
        throw InvalidInputError(fmt::format(
            "cost matrix is {}x{}, expected {}x{}", m.rows(), m.cols(), rows,
            cols));
      }
      if (!m.allFinite()) throw InvalidInputError("non-finite cost entry");
    }
  }
  costs_ = {std::move(side1_costs), std::move(side2_costs)};
  mean_ = {MeanOf(costs_[0]), MeanOf(costs_[1])};
}

bool MultilinearGame::IsZeroSum(double tol) const {
  return (mean_[0] + mean_[1]).cwiseAbs().maxCoeff() <= tol;
}

// ----------------------------------------------------------------------------
// SubnetworkZeroSumGame

SubnetworkZeroSumGame::SubnetworkZeroSumGame(
    ActionDomain domain1, ActionDomain domain2, std::vector<AgentCost> side1,
    std::vector<AgentCost> side2, bool strictly_convex_concave,
    std::shared_ptr<const MultilinearGame> multilinear)
    : domains_{std::move(domain1), std::move(domain2)},
      costs_{std::move(side1), std::move(side2)},
      strictly_convex_concave_(strictly_convex_concave),
      multilinear_(std::move(multilinear)) {
  for (Side side : kBothSides) {
    const auto& list = costs_[SideIndex(side)];
    if (list.empty()) {
      throw InvalidInputError("each side needs at least one agent");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].side() != side || list[i].agent() != static_cast<int>(i)) {
        throw InvalidInputError(fmt::format(
            "agent cost {} of side {} is labelled side {} agent {}", i,
            static_cast<int>(side), static_cast<int>(list[i].side()),
            list[i].agent()));
      }
    }
  }
}

double SubnetworkZeroSumGame::SideCostUnchecked(Side side, const Vector& x1,
                                                const Vector& x2) const {
  const auto& list = costs_[SideIndex(side)];
  double sum = 0.0;
  for (const AgentCost& c : list) sum += c.Value(x1, x2);
  return sum / static_cast<double>(list.size());
}

double SubnetworkZeroSumGame::SideCost(Side side, const Vector& x1,
                                       const Vector& x2) const {
  domains_[0].Require(x1, "x1");
  domains_[1].Require(x2, "x2");
  return SideCostUnchecked(side, x1, x2);
}

double SubnetworkZeroSumGame::GlobalCost(const Vector& x1,
                                         const Vector& x2) const {
  return SideCost(Side::kOne, x1, x2);
}

Vector SubnetworkZeroSumGame::Subgradient(Side side, int agent,
                                          const Vector& own,
                                          const Vector& opponent) const {
  const AgentCost& c = cost(side, agent);
  if (side == Side::kOne) {
    domains_[0].Require(own, "own point");
    domains_[1].Require(opponent, "opponent estimate");
    return c.GradientFirst(own, opponent);
  }
  domains_[1].Require(own, "own point");
  domains_[0].Require(opponent, "opponent estimate");
  return c.GradientSecond(opponent, own);
}

Vector SubnetworkZeroSumGame::GlobalGradient(Side side, const Vector& x1,
                                             const Vector& x2) const {
  const auto& list = costs_[0];
  Vector g = Vector::Zero(domain(side).dim());
  for (const AgentCost& c : list) {
    g += side == Side::kOne ? c.GradientFirst(x1, x2) : c.GradientSecond(x1, x2);
  }
  return g / static_cast<double>(list.size());
}

double SubnetworkZeroSumGame::MaxLipschitzOwn(Side side,
                                              std::array<Norm, 2> norms) const {
  double best = 0.0;
  for (const AgentCost& c : costs_[SideIndex(side)]) {
    best = std::max(best, c.LipschitzOwn(norms[SideIndex(side)]));
  }
  return best;
}

double SubnetworkZeroSumGame::MaxLipschitzOther(
    Side side, std::array<Norm, 2> norms) const {
  double best = 0.0;
  for (const AgentCost& c : costs_[SideIndex(side)]) {
    best = std::max(best, c.LipschitzOther(norms[SideIndex(OtherSide(side))]));
  }
  return best;
}

double SubnetworkZeroSumGame::GlobalLipschitz(std::array<Norm, 2> norms) const {
  return std::max({MaxLipschitzOwn(Side::kOne, norms),
                   MaxLipschitzOther(Side::kOne, norms),
                   MaxLipschitzOwn(Side::kTwo, norms),
                   MaxLipschitzOther(Side::kTwo, norms)});
}

// ----------------------------------------------------------------------------
// Builders

SubnetworkZeroSumGame MakeGame(MultilinearGame game) {
  auto shared = std::make_shared<const MultilinearGame>(std::move(game));
  std::array<std::vector<AgentCost>, 2> costs;
  for (Side side : kBothSides) {
    for (int i = 0; i < shared->num_agents(side); ++i) {
      const Matrix* c = &shared->cost_matrix(side, i);
      LipschitzTable lip;
      for (Norm norm : {Norm::kL1, Norm::kL2}) {
        const int k = static_cast<int>(norm);
        // x1-direction sensitivity is governed by C x2 (columns), the
        // x2-direction one by C^T x1 (rows).
        const double d1 = MaxColumnNorm(*c, norm);
        const double d2 = MaxRowNorm(*c, norm);
        lip.own[k] = side == Side::kOne ? d1 : d2;
        lip.other[k] = side == Side::kOne ? d2 : d1;
      }
      costs[SideIndex(side)].emplace_back(
          side, i,
          [c](const Vector& x1, const Vector& x2) { return x1.dot(*c * x2); },
          [c](const Vector&, const Vector& x2) -> Vector { return *c * x2; },
          [c](const Vector& x1, const Vector&) -> Vector {
            return c->transpose() * x1;
          },
          lip);
    }
  }
  const int m1 = shared->num_actions(Side::kOne);
  const int m2 = shared->num_actions(Side::kTwo);
  return SubnetworkZeroSumGame(ActionDomain::Simplex(m1),
                               ActionDomain::Simplex(m2), std::move(costs[0]),
                               std::move(costs[1]), false, shared);
}

MultilinearGame BuildInterdictionGame(
    int n_agents, int n_paths, int n_arcs, const Matrix& path_arc_incidence,
    const std::vector<Vector>& detection_probs) {
  if (n_agents <= 0 || n_paths <= 0 || n_arcs <= 0) {
    throw InvalidInputError("agent, path and arc counts must be positive");
  }
  if (path_arc_incidence.rows() != n_paths ||
      path_arc_incidence.cols() != n_arcs) {
    throw InvalidInputError(fmt::format(
        "incidence is {}x{}, expected {}x{} (paths x arcs)",
        path_arc_incidence.rows(), path_arc_incidence.cols(), n_paths, n_arcs));
  }
  if (((path_arc_incidence.array() != 0.0) &&
       (path_arc_incidence.array() != 1.0))
          .any()) {
    throw InvalidInputError("incidence entries must be 0 or 1");
  }
  if (static_cast<int>(detection_probs.size()) != n_agents) {
    throw InvalidInputError(
        fmt::format("{} detection probability vectors for {} agents",
                    detection_probs.size(), n_agents));
  }
  std::vector<Matrix> evader, interdictor;
  for (int i = 0; i < n_agents; ++i) {
    const Vector& p = detection_probs[i];
    if (p.size() != n_arcs) {
      throw InvalidInputError(fmt::format(
          "agent {} has {} detection probabilities for {} arcs", i, p.size(),
          n_arcs));
    }
    if (!p.allFinite() || p.minCoeff() < 0.0 || p.maxCoeff() > 1.0) {
      throw InvalidInputError("detection probabilities must lie in [0, 1]");
    }
    Matrix a = path_arc_incidence * p.asDiagonal();
    interdictor.push_back(-a);
    evader.push_back(std::move(a));
  }
  return MultilinearGame(std::move(evader), std::move(interdictor));
}

MultilinearGame BuildMatrixGame(const Matrix& cost, int n_agents) {
  if (n_agents <= 0) throw InvalidInputError("n_agents must be positive");
  return MultilinearGame(std::vector<Matrix>(n_agents, cost),
                         std::vector<Matrix>(n_agents, -cost));
}

SubnetworkZeroSumGame BuildPowerAllocationGame() {
  constexpr int kChannels = 6;
  constexpr std::array<int, kChannels> kSignalPair = {0, 1, 2, 0, 1, 2};
  constexpr std::array<double, kChannels> kNoiseFloor = {1, 2, 3, 4, 5, 6};
  constexpr std::array<int, kChannels> kJammerPair = {0, 0, 1, 1, 2, 2};
  constexpr double kGain = 8.0;

  std::array<std::vector<AgentCost>, 2> costs;
  for (int i = 0; i < kChannels; ++i) {
    const int a = kSignalPair[i];
    const int b = kJammerPair[i];
    const double s = kNoiseFloor[i];
    // x1 = noise powers y, x2 = signal powers x.
    auto rate = [a, b, s](const Vector& y, const Vector& x) {
      return std::log1p(kGain * x[a] / (s + y[b]));
    };
    auto d_noise = [a, b, s](const Vector& y, const Vector& x) -> Vector {
      Vector g = Vector::Zero(3);
      const double den = s + y[b];
      g[b] = -kGain * x[a] / (den * (den + kGain * x[a]));
      return g;
    };
    auto d_signal = [a, b, s](const Vector& y, const Vector& x) -> Vector {
      Vector g = Vector::Zero(3);
      g[a] = kGain / (s + y[b] + kGain * x[a]);
      return g;
    };
    // Single nonzero partial, so every dual norm equals its magnitude; the
    // maxima over the simplices sit at y_b = 0 with x_a = 1 (noise) and
    // x_a = 0 (signal).
    const double l_noise = kGain / (s * (s + kGain));
    const double l_signal = kGain / s;
    costs[0].emplace_back(Side::kOne, i, rate, d_noise, d_signal,
                          LipschitzTable::Uniform(l_noise, l_signal));
    costs[1].emplace_back(
        Side::kTwo, i,
        [rate](const Vector& y, const Vector& x) { return -rate(y, x); },
        [d_noise](const Vector& y, const Vector& x) -> Vector {
          return -d_noise(y, x);
        },
        [d_signal](const Vector& y, const Vector& x) -> Vector {
          return -d_signal(y, x);
        },
        LipschitzTable::Uniform(l_signal, l_noise));
  }
  return SubnetworkZeroSumGame(ActionDomain::Simplex(3),
                               ActionDomain::Simplex(3), std::move(costs[0]),
                               std::move(costs[1]),
                               /*strictly_convex_concave=*/true);
}

}  // namespace subzero
