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

#ifndef SUBZERO_NETWORK_H_
#define SUBZERO_NETWORK_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subzero/game.h"
#include "subzero/rng.h"

namespace subzero {

// Simple undirected graph on nodes 0..n-1 (no self-loops, no multi-edges).
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int n);
  UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges);

  static UndirectedGraph Complete(int n);
  static UndirectedGraph Path(int n);
  static UndirectedGraph Ring(int n);
  static UndirectedGraph Star(int n);

  int num_nodes() const { return n_; }
  int num_edges() const;
  bool HasEdge(int i, int j) const { return adjacency_(i, j) != 0; }
  // Returns false if the edge already existed.
  bool AddEdge(int i, int j);
  bool RemoveEdge(int i, int j);
  int Degree(int i) const;
  std::vector<std::pair<int, int>> Edges() const;

  bool IsConnected() const;
  Matrix Laplacian() const;

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.n_ == b.n_ && a.adjacency_ == b.adjacency_;
  }

 private:
  int n_;
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> adjacency_;
};

// Nonnegative weight matrix W; W(i, j) > 0 means i listens to j.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(Matrix weights);

  int num_nodes() const { return static_cast<int>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }
  // Smallest strictly positive entry.
  double MinPositiveWeight() const;
  bool IsRowStochastic(double tol = 1e-12) const;
  bool IsDoublyStochastic(double tol = 1e-12) const;
  // Strong connectivity of the graph of positive off-diagonal entries.
  bool IsStronglyConnected() const;

 private:
  Matrix weights_;
};

// Metropolis-Hastings weights W_ij = 1 / (1 + max(deg_i, deg_j)) on edges,
// remainder on the diagonal. Symmetric, hence doubly stochastic. Throws
// ConnectivityError for a disconnected graph.
WeightedDigraph MetropolisWeights(const UndirectedGraph& graph);

// Second-smallest eigenvalue of the combinatorial Laplacian. Needs n >= 2.
double AlgebraicConnectivity(const UndirectedGraph& graph);

// Seeded randomized edge search for a connected graph whose algebraic
// connectivity lies within `tolerance` of `target`. Throws ParameterError for
// an unreachable target (<= 0 or > n) and NotFoundError after exhausting the
// search budget.
UndirectedGraph GraphWithTargetConnectivity(int n, double target,
                                            double tolerance,
                                            std::uint64_t seed,
                                            int max_restarts = 64,
                                            int steps_per_restart = 400);

// Random spanning tree plus independent extra edges with probability
// `edge_prob`; always connected.
UndirectedGraph RandomConnectedGraph(int n, double edge_prob, Rng& rng);

// Constants of the geometric decay |Phi(t,s)_ij - 1/n| <= gamma theta^(t-s):
// gamma = (1 - eta / 4n^2)^-2 and theta = (1 - eta / 4n^2)^(1/B).
struct DecayConstants {
  double gamma = 1.0;
  double theta = 0.0;

  static DecayConstants From(double eta, int n, int window);
};

// Cross-network weights: every side-l agent averages the states of its
// neighbours on the other side.
Matrix PairedCrossMatrix(int n_receivers, int n_senders);
Matrix UniformCrossMatrix(int n_receivers, int n_senders);

// Time-varying communication. Intra-side matrices are drawn uniformly from a
// pool of connected graphs with a counter-based seeded selector, so the
// matrix used at round t is a pure function of (seed, side, t).
class CommunicationSchedule {
 public:
  CommunicationSchedule(std::vector<WeightedDigraph> pool1,
                        std::vector<WeightedDigraph> pool2,
                        std::vector<Matrix> cross_into_1,
                        std::vector<Matrix> cross_into_2, std::uint64_t seed);

  int num_agents(Side side) const;
  std::uint64_t seed() const { return seed_; }

  // W_l(t).
  const Matrix& Intra(Side side, int t) const;
  // Row-stochastic matrix with which `receiver`-side agents average the
  // opponent's states at round t (n_receiver x n_sender).
  const Matrix& CrossInto(Side receiver, int t) const;

  int PoolIndex(Side side, int t) const;
  int CrossIndex(Side receiver, int t) const;
  const std::vector<WeightedDigraph>& pool(Side side) const {
    return pools_[SideIndex(side)];
  }

  // Smallest positive intra-network weight over both pools.
  double eta() const { return eta_; }
  // Joint-connectivity window; every pool member is connected so B = 1.
  int window(Side) const { return 1; }
  DecayConstants decay(Side side) const;

 private:
  std::array<std::vector<WeightedDigraph>, 2> pools_;
  std::array<std::vector<Matrix>, 2> cross_;
  std::uint64_t seed_;
  double eta_;
};

// Phi_l(t, s) = W_l(t) W_l(t-1) ... W_l(s). Throws ParameterError if t < s.
Matrix TransitionMatrix(const CommunicationSchedule& schedule, Side side,
                        int t, int s);

// Checks that every union of `window` consecutive intra graphs over rounds
// [0, horizon) is strongly connected.
bool IsUniformlyJointlyConnected(const CommunicationSchedule& schedule,
                                 Side side, int window, int horizon);

// Graph pools as edge-list text: one "u v" pair per line (0-indexed), one
// graph per block, blocks separated by blank lines, '#' starts a comment.
// Every graph has `n` nodes.
std::vector<UndirectedGraph> ParseGraphPool(std::string_view text, int n);
std::vector<UndirectedGraph> LoadGraphPool(const std::filesystem::path& path,
                                           int n);
std::string FormatGraphPool(const std::vector<UndirectedGraph>& pool);

}  // namespace subzero

#endif  // SUBZERO_NETWORK_H_
