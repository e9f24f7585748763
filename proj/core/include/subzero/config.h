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

#ifndef SUBZERO_CONFIG_H_
#define SUBZERO_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace subzero {

// Per-side communication network description.
struct NetworkSideConfig {
  // random-pool, ring, complete, path, star, lambda2 or file.
  std::string kind = "random-pool";
  double lambda2 = 1.0;
  std::string file;

  bool operator==(const NetworkSideConfig&) const = default;
};

// A fully resolved experiment description. Parsing fills every omitted key
// with its preset default, so serialization writes every key.
struct RunConfig {
  // [game]
  // interdiction-desk, interdiction-paper, power-allocation,
  // matching-pennies or matrix.
  std::string preset = "interdiction-desk";
  int agents = 5;
  int paths = 10;
  int arcs = 15;
  // Rows separated by ';', entries by ','. Matrix preset only.
  std::string matrix;
  // Common initial point of every agent on a side; empty selects the
  // domain center.
  std::string init1;
  std::string init2;

  // [geometry]: euclidean or entropy.
  std::string geometry1 = "entropy";
  std::string geometry2 = "entropy";

  // [network]
  NetworkSideConfig network1;
  NetworkSideConfig network2;
  int pool_size = 5;
  double edge_prob = 0.3;
  double lambda2_tolerance = 0.05;
  // paired or uniform.
  std::string cross = "paired";

  // [steps]: power, constant or horizon (alpha = 1/sqrt(horizon)).
  std::string step_kind = "power";
  double kappa = 0.5;
  double alpha = 0.01;

  // [run]
  int horizon = 1000;
  std::uint64_t seed = 7;
  int stride = 10;
  int snapshot_stride = -1;
  bool compute_regret = true;
  bool compute_gap = true;
  // NE certificate used for the dist_to_ne column.
  std::string reference;

  // [output]
  std::string metrics = "metrics.csv";
  std::string trace;
  std::string certificate = "certificate.jsonl";

  // [solver]
  double solver_tolerance = 1e-6;
  int solver_max_iterations = 200000;

  bool operator==(const RunConfig&) const = default;
};

// Parses and validates INI text. Relative paths stay relative; callers
// resolve them against the config file's directory. Throws ConfigError.
RunConfig ParseConfig(std::string_view text);
RunConfig LoadConfig(const std::filesystem::path& path);

// Writes every key; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const RunConfig& config);

// Re-runs the semantic checks on an already-built config (after sweep
// overrides, for example). Throws ConfigError.
void ValidateConfig(const RunConfig& config);

// Parses "0.75" or "3/4".
double ParseNumberOrFraction(std::string_view text);

}  // namespace subzero

#endif  // SUBZERO_CONFIG_H_
