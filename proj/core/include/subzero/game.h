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

#ifndef SUBZERO_GAME_H_
#define SUBZERO_GAME_H_

#include <array>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace subzero {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// The two subnetworks. Side one always minimizes the global cost U and side
// two maximizes it (equivalently minimizes its own cost -U).
enum class Side { kOne = 1, kTwo = 2 };

inline constexpr std::array<Side, 2> kBothSides = {Side::kOne, Side::kTwo};

inline int SideIndex(Side side) { return static_cast<int>(side) - 1; }
inline Side OtherSide(Side side) {
  return side == Side::kOne ? Side::kTwo : Side::kOne;
}

// Primal norm of a geometry; the dual is l-infinity for kL1 and l2 for kL2.
enum class Norm { kL1, kL2 };

double PrimalNorm(Norm norm, const Vector& v);
double DualNorm(Norm norm, const Vector& v);

// A compact convex action set: the probability simplex or an axis-aligned box.
class ActionDomain {
 public:
  static ActionDomain Simplex(int dim);
  static ActionDomain Box(Vector lower, Vector upper);

  bool is_simplex() const { return kind_ == Kind::kSimplex; }
  int dim() const { return dim_; }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool Contains(const Vector& x, double tol = 1e-9) const;
  // Throws InvalidInputError naming `what` if x is not in the domain.
  void Require(const Vector& x, std::string_view what) const;

  // Barycenter of the simplex, midpoint of the box.
  Vector Center() const;
  // Extreme points. Boxes are limited to 20 dimensions.
  std::vector<Vector> Vertices() const;

 private:
  enum class Kind { kSimplex, kBox };
  ActionDomain(Kind kind, int dim, Vector lower, Vector upper)
      : kind_(kind), dim_(dim), lower_(std::move(lower)),
        upper_(std::move(upper)) {}

  Kind kind_;
  int dim_;
  Vector lower_;
  Vector upper_;
};

// Lipschitz constants of one agent's cost in its own action and in the
// opponent's action, each measured in a given primal norm.
struct LipschitzTable {
  std::array<double, 2> own = {0.0, 0.0};    // indexed by Norm
  std::array<double, 2> other = {0.0, 0.0};  // indexed by Norm

  static LipschitzTable Uniform(double own_value, double other_value) {
    return {{own_value, own_value}, {other_value, other_value}};
  }
};

// Cost f_{l,i}(x1, x2) of one agent together with its partial gradients.
// The evaluator is convex in the agent's own action and concave in the
// opponent's.
class AgentCost {
 public:
  using Evaluator = std::function<double(const Vector&, const Vector&)>;
  using Gradient = std::function<Vector(const Vector&, const Vector&)>;

  AgentCost(Side side, int agent, Evaluator value, Gradient grad1,
            Gradient grad2, LipschitzTable lipschitz);

  Side side() const { return side_; }
  int agent() const { return agent_; }

  double Value(const Vector& x1, const Vector& x2) const {
    return value_(x1, x2);
  }
  Vector GradientFirst(const Vector& x1, const Vector& x2) const {
    return grad1_(x1, x2);
  }
  Vector GradientSecond(const Vector& x1, const Vector& x2) const {
    return grad2_(x1, x2);
  }
  double LipschitzOwn(Norm norm) const {
    return lipschitz_.own[static_cast<int>(norm)];
  }
  double LipschitzOther(Norm norm) const {
    return lipschitz_.other[static_cast<int>(norm)];
  }

 private:
  Side side_;
  int agent_;
  Evaluator value_;
  Gradient grad1_;
  Gradient grad2_;
  LipschitzTable lipschitz_;
};

// Finite-strategy game extended to mixed strategies. Agent i on side l has
// cost x1^T C x2 with C its cost matrix (M1 x M2).
class MultilinearGame {
 public:
  MultilinearGame(std::vector<Matrix> side1_costs,
                  std::vector<Matrix> side2_costs);

  int num_actions(Side side) const {
    return side == Side::kOne ? static_cast<int>(mean_[0].rows())
                              : static_cast<int>(mean_[0].cols());
  }
  int num_agents(Side side) const {
    return static_cast<int>(costs_[SideIndex(side)].size());
  }
  const Matrix& cost_matrix(Side side, int agent) const {
    return costs_[SideIndex(side)].at(agent);
  }
  // Average of the cost matrices of one side.
  const Matrix& mean_cost_matrix(Side side) const {
    return mean_[SideIndex(side)];
  }
  // Bilinearity makes the zero-sum condition equivalent to the two mean
  // matrices summing to zero entrywise.
  bool IsZeroSum(double tol = 1e-12) const;

 private:
  std::array<std::vector<Matrix>, 2> costs_;
  std::array<Matrix, 2> mean_;
};

// Two subnetworks of agents playing a zero-sum game: the side averages of the
// agents' costs sum to zero everywhere on domain1 x domain2.
class SubnetworkZeroSumGame {
 public:
  SubnetworkZeroSumGame(ActionDomain domain1, ActionDomain domain2,
                        std::vector<AgentCost> side1,
                        std::vector<AgentCost> side2,
                        bool strictly_convex_concave = false,
                        std::shared_ptr<const MultilinearGame> multilinear =
                            nullptr);

  int num_agents(Side side) const {
    return static_cast<int>(costs_[SideIndex(side)].size());
  }
  const ActionDomain& domain(Side side) const {
    return domains_[SideIndex(side)];
  }
  const AgentCost& cost(Side side, int agent) const {
    return costs_[SideIndex(side)].at(agent);
  }
  // Non-null when the game was built from a finite-strategy game; enables
  // exact vertex enumeration in regret and gap computations.
  const MultilinearGame* multilinear() const { return multilinear_.get(); }
  // Declared, not verified.
  bool strictly_convex_concave() const { return strictly_convex_concave_; }

  // U(x1, x2): the average cost of side one.
  double GlobalCost(const Vector& x1, const Vector& x2) const;
  // f_l(x1, x2): the average cost of side l. SideCost(kTwo) == -GlobalCost.
  double SideCost(Side side, const Vector& x1, const Vector& x2) const;

  // Gradient of agent's cost in its own action, at (own, opponent).
  Vector Subgradient(Side side, int agent, const Vector& own,
                     const Vector& opponent) const;
  // Gradient of U with respect to x_l.
  Vector GlobalGradient(Side side, const Vector& x1, const Vector& x2) const;

  // max over agents of LipschitzOwn / LipschitzOther, with the own norm of
  // each side given by norms[side].
  double MaxLipschitzOwn(Side side, std::array<Norm, 2> norms) const;
  double MaxLipschitzOther(Side side, std::array<Norm, 2> norms) const;
  // The global constant L: max of all four.
  double GlobalLipschitz(std::array<Norm, 2> norms) const;

  // Unchecked evaluation paths used by the engine inner loops, where domain
  // membership is guaranteed by construction.
  double SideCostUnchecked(Side side, const Vector& x1, const Vector& x2) const;

 private:
  std::array<ActionDomain, 2> domains_;
  std::array<std::vector<AgentCost>, 2> costs_;
  bool strictly_convex_concave_;
  std::shared_ptr<const MultilinearGame> multilinear_;
};

// Wraps a finite-strategy game as a subnetwork game on two simplices.
SubnetworkZeroSumGame MakeGame(MultilinearGame game);

// Network interdiction between evaders (side one, mixed strategy over paths)
// and interdictors (side two, mixed strategy over arcs). incidence is
// n_paths x n_arcs with 0/1 entries; detection_probs[i] holds p_k^i for
// agent i of each side (the two sides share probabilities pairwise, which
// makes the game zero-sum). Agent i's cost matrix is p_k^i * d_pk.
MultilinearGame BuildInterdictionGame(int n_agents, int n_paths, int n_arcs,
                                      const Matrix& path_arc_incidence,
                                      const std::vector<Vector>& detection_probs);

// Zero-sum matrix game with the same cost matrix for every side-one agent.
MultilinearGame BuildMatrixGame(const Matrix& cost, int n_agents = 1);

// Power allocation against jammers on six channels. Side one picks noise
// powers y over three channel pairs, side two picks signal powers x, both on
// the 3-simplex. Agent i's cost on side one is the channel rate
// log(1 + 8 x_a(i) / (s(i) + y_b(i))) and side two's is its negation.
SubnetworkZeroSumGame BuildPowerAllocationGame();

}  // namespace subzero

#endif  // SUBZERO_GAME_H_
