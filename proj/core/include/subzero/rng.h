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

#ifndef SUBZERO_RNG_H_
#define SUBZERO_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace subzero {

// SplitMix64 finalizer. Used for counter-based draws that must be
// reproducible from (seed, index) alone.
std::uint64_t Mix64(std::uint64_t x);

// Derives an independent seed for the named substream of a master seed.
std::uint64_t SubstreamSeed(std::uint64_t master, std::string_view name);

// Thin wrapper over mt19937_64 whose real/int draws do not depend on the
// standard library's distribution implementations, so that streams are
// identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::string_view stream)
      : engine_(SubstreamSeed(master, stream)) {}

  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform in {0, ..., n-1}; n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);
  // Standard exponential, for Dirichlet-style simplex sampling.
  double Exponential();
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace subzero

#endif  // SUBZERO_RNG_H_
