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

#include "subzero/network.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "subzero/error.h"

namespace subzero {

// ----------------------------------------------------------------------------
// UndirectedGraph

UndirectedGraph::UndirectedGraph(int n) : n_(n) {
  if (n <= 0) throw InvalidInputError("graph needs at least one node");
  adjacency_.setZero(n, n);
}

UndirectedGraph::UndirectedGraph(int n,
                                 const std::vector<std::pair<int, int>>& edges)
    : UndirectedGraph(n) {
  for (const auto& [i, j] : edges) AddEdge(i, j);
}

UndirectedGraph UndirectedGraph::Complete(int n) {
  UndirectedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.AddEdge(i, j);
  }
  return g;
}

UndirectedGraph UndirectedGraph::Path(int n) {
  UndirectedGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.AddEdge(i, i + 1);
  return g;
}

UndirectedGraph UndirectedGraph::Ring(int n) {
  UndirectedGraph g = Path(n);
  if (n > 2) g.AddEdge(n - 1, 0);
  return g;
}

UndirectedGraph UndirectedGraph::Star(int n) {
  UndirectedGraph g(n);
  for (int i = 1; i < n; ++i) g.AddEdge(0, i);
  return g;
}

int UndirectedGraph::num_edges() const { return adjacency_.sum() / 2; }

bool UndirectedGraph::AddEdge(int i, int j) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw InvalidInputError(
        fmt::format("edge ({}, {}) outside a graph of {} nodes", i, j, n_));
  }
  if (i == j) throw InvalidInputError(fmt::format("self-loop at node {}", i));
  if (adjacency_(i, j)) return false;
  adjacency_(i, j) = adjacency_(j, i) = 1;
  return true;
}

bool UndirectedGraph::RemoveEdge(int i, int j) {
  if (!adjacency_(i, j)) return false;
  adjacency_(i, j) = adjacency_(j, i) = 0;
  return true;
}

int UndirectedGraph::Degree(int i) const { return adjacency_.row(i).sum(); }

std::vector<std::pair<int, int>> UndirectedGraph::Edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (adjacency_(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool UndirectedGraph::IsConnected() const {
  std::vector<bool> seen(n_, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n_; ++j) {
      if (adjacency_(i, j) && !seen[j]) {
        seen[j] = true;
        ++visited;
        stack.push_back(j);
      }
    }
  }
  return visited == n_;
}

Matrix UndirectedGraph::Laplacian() const {
  Matrix a = adjacency_.cast<double>();
  Matrix l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

// ----------------------------------------------------------------------------
// WeightedDigraph

WeightedDigraph::WeightedDigraph(Matrix weights) : weights_(std::move(weights)) {
  if (weights_.rows() == 0 || weights_.rows() != weights_.cols()) {
    throw InvalidInputError("weight matrix must be square and non-empty");
  }
  if (!weights_.allFinite() || weights_.minCoeff() < 0.0) {
    throw InvalidInputError("weights must be finite and nonnegative");
  }
}

double WeightedDigraph::MinPositiveWeight() const {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < weights_.size(); ++k) {
    const double w = weights_.data()[k];
    if (w > 0.0) best = std::min(best, w);
  }
  return best;
}

bool WeightedDigraph::IsRowStochastic(double tol) const {
  return ((weights_.rowwise().sum().array() - 1.0).abs() <= tol).all();
}

bool WeightedDigraph::IsDoublyStochastic(double tol) const {
  return IsRowStochastic(tol) &&
         ((weights_.colwise().sum().array() - 1.0).abs() <= tol).all();
}

bool WeightedDigraph::IsStronglyConnected() const {
  const int n = num_nodes();
  // Reachability from node 0 along forward and reversed edges.
  for (bool reversed : {false, true}) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        const double w = reversed ? weights_(j, i) : weights_(i, j);
        if (w > 0.0 && !seen[j]) {
          seen[j] = true;
          ++visited;
          stack.push_back(j);
        }
      }
    }
    if (visited != n) return false;
  }
  return true;
}

// ----------------------------------------------------------------------------
// Constructions

WeightedDigraph MetropolisWeights(const UndirectedGraph& graph) {
  if (!graph.IsConnected()) {
    throw ConnectivityError("Metropolis weights need a connected graph");
  }
  const int n = graph.num_nodes();
  Matrix w = Matrix::Zero(n, n);
  for (const auto& [i, j] : graph.Edges()) {
    const double wij =
        1.0 / (1.0 + std::max(graph.Degree(i), graph.Degree(j)));
    w(i, j) = w(j, i) = wij;
  }
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return WeightedDigraph(std::move(w));
}

double AlgebraicConnectivity(const UndirectedGraph& graph) {
  if (graph.num_nodes() < 2) {
    throw InvalidInputError("algebraic connectivity needs at least two nodes");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(graph.Laplacian(),
                                               Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues()[1]);
}

UndirectedGraph RandomConnectedGraph(int n, double edge_prob, Rng& rng) {
  UndirectedGraph g(n);
  // Random recursive tree over a random node order.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformInt(i + 1)]);
  }
  for (int k = 1; k < n; ++k) {
    g.AddEdge(order[k], order[rng.UniformInt(k)]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.Uniform() < edge_prob) g.AddEdge(i, j);
    }
  }
  return g;
}

UndirectedGraph GraphWithTargetConnectivity(int n, double target,
                                            double tolerance,
                                            std::uint64_t seed,
                                            int max_restarts,
                                            int steps_per_restart) {
  if (n < 2) throw ParameterError("need at least two nodes");
  if (!(target > 0.0)) {
    throw ParameterError(fmt::format(
        "target algebraic connectivity {} unreachable: connected graphs have "
        "lambda2 > 0",
        target));
  }
  if (target > n + tolerance) {
    throw ParameterError(fmt::format(
        "target algebraic connectivity {} exceeds the maximum {} (complete "
        "graph)",
        target, n));
  }
  if (n == 2) {
    UndirectedGraph k2 = UndirectedGraph::Complete(2);
    const double got = AlgebraicConnectivity(k2);
    if (std::abs(got - target) <= tolerance) return k2;
    throw NotFoundError("only K2 is connected on two nodes", got);
  }
  Rng rng(seed, "graph-search");
  double best_distance = std::numeric_limits<double>::infinity();
  double best_value = 0.0;
  for (int restart = 0; restart < max_restarts; ++restart) {
    UndirectedGraph g = RandomConnectedGraph(n, 0.0, rng);
    double distance = std::abs(AlgebraicConnectivity(g) - target);
    for (int step = 0; step <= steps_per_restart; ++step) {
      if (distance <= tolerance) return g;
      int i = static_cast<int>(rng.UniformInt(n));
      int j = static_cast<int>(rng.UniformInt(n - 1));
      if (j >= i) ++j;
      const bool had = g.HasEdge(i, j);
      had ? g.RemoveEdge(i, j) : g.AddEdge(i, j);
      if (had && !g.IsConnected()) {
        g.AddEdge(i, j);
        continue;
      }
      const double value = AlgebraicConnectivity(g);
      const double d = std::abs(value - target);
      // Ties are accepted so the walk can cross plateaus.
      if (d <= distance) {
        distance = d;
        if (d < best_distance) {
          best_distance = d;
          best_value = value;
        }
      } else {
        had ? g.AddEdge(i, j) : g.RemoveEdge(i, j);
      }
    }
  }
  throw NotFoundError(
      fmt::format("no graph on {} nodes with lambda2 within {} of {}; closest "
                  "found {}",
                  n, tolerance, target, best_value),
      best_value);
}

DecayConstants DecayConstants::From(double eta, int n, int window) {
  if (!(eta > 0.0) || eta > 1.0) {
    throw ParameterError(fmt::format("eta = {} must lie in (0, 1]", eta));
  }
  if (n <= 0 || window <= 0) {
    throw ParameterError("n and the connectivity window must be positive");
  }
  const double base = 1.0 - eta / (4.0 * n * n);
  return {std::pow(base, -2.0), std::pow(base, 1.0 / window)};
}

Matrix PairedCrossMatrix(int n_receivers, int n_senders) {
  if (n_receivers != n_senders) {
    throw InvalidInputError(fmt::format(
        "paired cross weights need equal side sizes, got {} and {}",
        n_receivers, n_senders));
  }
  return Matrix::Identity(n_receivers, n_senders);
}

Matrix UniformCrossMatrix(int n_receivers, int n_senders) {
  if (n_receivers <= 0 || n_senders <= 0) {
    throw InvalidInputError("cross matrix sizes must be positive");
  }
  return Matrix::Constant(n_receivers, n_senders, 1.0 / n_senders);
}

// ----------------------------------------------------------------------------
// CommunicationSchedule

namespace {

constexpr std::array<std::uint64_t, 4> kSelectorStreams = {
    0x5a1d1e5ULL, 0x5a1d2e5ULL, 0xc0551ULL, 0xc0552ULL};

int Select(std::uint64_t seed, std::uint64_t stream, int t, std::size_t size) {
  if (size == 1) return 0;
  const std::uint64_t h =
      Mix64(Mix64(seed ^ stream) + static_cast<std::uint64_t>(t));
  return static_cast<int>(h % size);
}

}  // namespace

CommunicationSchedule::CommunicationSchedule(
    std::vector<WeightedDigraph> pool1, std::vector<WeightedDigraph> pool2,
    std::vector<Matrix> cross_into_1, std::vector<Matrix> cross_into_2,
    std::uint64_t seed)
    : pools_{std::move(pool1), std::move(pool2)},
      cross_{std::move(cross_into_1), std::move(cross_into_2)},
      seed_(seed),
      eta_(std::numeric_limits<double>::infinity()) {
  for (Side side : kBothSides) {
    const auto& pool = pools_[SideIndex(side)];
    if (pool.empty()) {
      throw InvalidInputError(
          fmt::format("side {} has an empty graph pool", SideIndex(side) + 1));
    }
    const int n = pool.front().num_nodes();
    for (const WeightedDigraph& w : pool) {
      if (w.num_nodes() != n) {
        throw InvalidInputError("pool graphs differ in node count");
      }
      if (!w.IsDoublyStochastic()) {
        throw InvalidInputError(
            "intra-network weights must be doubly stochastic");
      }
      if (n > 1 && !w.IsStronglyConnected()) {
        throw ConnectivityError(
            "every pool graph must be connected (window B = 1)");
      }
      eta_ = std::min(eta_, w.MinPositiveWeight());
    }
  }
  const int n1 = pools_[0].front().num_nodes();
  const int n2 = pools_[1].front().num_nodes();
  for (Side receiver : kBothSides) {
    const auto& list = cross_[SideIndex(receiver)];
    const int rows = receiver == Side::kOne ? n1 : n2;
    const int cols = receiver == Side::kOne ? n2 : n1;
    if (list.empty()) {
      throw InvalidInputError("cross-network weight list is empty");
    }
    for (const Matrix& c : list) {
      if (c.rows() != rows || c.cols() != cols) {
        throw InvalidInputError(fmt::format(
            "cross matrix into side {} is {}x{}, expected {}x{}",
            SideIndex(receiver) + 1, c.rows(), c.cols(), rows, cols));
      }
      if (!c.allFinite() || c.minCoeff() < 0.0 ||
          ((c.rowwise().sum().array() - 1.0).abs() > 1e-12).any()) {
        throw InvalidInputError("cross matrices must be row-stochastic");
      }
      for (Eigen::Index r = 0; r < c.rows(); ++r) {
        if (!(c.row(r).maxCoeff() > 0.0)) {
          throw ConnectivityError("an agent has no cross-network neighbour");
        }
      }
    }
  }
}

int CommunicationSchedule::num_agents(Side side) const {
  return pools_[SideIndex(side)].front().num_nodes();
}

int CommunicationSchedule::PoolIndex(Side side, int t) const {
  return Select(seed_, kSelectorStreams[SideIndex(side)], t,
                pools_[SideIndex(side)].size());
}

int CommunicationSchedule::CrossIndex(Side receiver, int t) const {
  return Select(seed_, kSelectorStreams[2 + SideIndex(receiver)], t,
                cross_[SideIndex(receiver)].size());
}

const Matrix& CommunicationSchedule::Intra(Side side, int t) const {
  if (t < 0) throw ParameterError("round index must be nonnegative");
  return pools_[SideIndex(side)][PoolIndex(side, t)].weights();
}

const Matrix& CommunicationSchedule::CrossInto(Side receiver, int t) const {
  if (t < 0) throw ParameterError("round index must be nonnegative");
  return cross_[SideIndex(receiver)][CrossIndex(receiver, t)];
}

DecayConstants CommunicationSchedule::decay(Side side) const {
  return DecayConstants::From(std::min(eta_, 1.0), num_agents(side),
                              window(side));
}

Matrix TransitionMatrix(const CommunicationSchedule& schedule, Side side,
                        int t, int s) {
  if (s < 0 || t < s) {
    throw ParameterError(
        fmt::format("transition matrix needs t >= s >= 0, got t={} s={}", t, s));
  }
  Matrix phi = schedule.Intra(side, s);
  for (int k = s + 1; k <= t; ++k) phi = schedule.Intra(side, k) * phi;
  return phi;
}

bool IsUniformlyJointlyConnected(const CommunicationSchedule& schedule,
                                 Side side, int window, int horizon) {
  if (window <= 0) throw ParameterError("window must be positive");
  const int n = schedule.num_agents(side);
  for (int k = 0; k + window <= horizon; ++k) {
    Matrix sum = Matrix::Zero(n, n);
    for (int t = k; t < k + window; ++t) sum += schedule.Intra(side, t);
    if (n > 1 && !WeightedDigraph(sum).IsStronglyConnected()) return false;
  }
  return true;
}

// ----------------------------------------------------------------------------
// Edge-list pools

std::vector<UndirectedGraph> ParseGraphPool(std::string_view text, int n) {
  std::vector<UndirectedGraph> pool;
  std::vector<std::pair<int, int>> edges;
  bool in_block = false;
  int line_no = 0;
  auto flush = [&] {
    if (in_block) pool.emplace_back(n, edges);
    edges.clear();
    in_block = false;
  };
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      // Comment-only lines do not terminate a block; blank ones do.
      if (blank) flush();
      continue;
    }
    std::istringstream fields(line);
    int u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw InvalidInputError(
          fmt::format("graph pool line {}: expected \"u v\"", line_no));
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InvalidInputError(fmt::format(
          "graph pool line {}: node index outside [0, {})", line_no, n));
    }
    edges.emplace_back(u, v);
    in_block = true;
  }
  flush();
  if (pool.empty()) throw InvalidInputError("graph pool contains no graphs");
  return pool;
}

std::vector<UndirectedGraph> LoadGraphPool(const std::filesystem::path& path,
                                           int n) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(fmt::format("cannot open graph pool {}", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGraphPool(buffer.str(), n);
}

std::string FormatGraphPool(const std::vector<UndirectedGraph>& pool) {
  std::string out;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (k > 0) out += '\n';
    for (const auto& [i, j] : pool[k].Edges()) out += fmt::format("{} {}\n", i, j);
  }
  return out;
}

}  // namespace subzero
