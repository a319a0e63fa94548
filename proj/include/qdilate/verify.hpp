// Copyright 2026 The qdilate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "qdilate/channels.hpp"
#include "qdilate/dilations.hpp"
#include "qdilate/linalg.hpp"

namespace qdilate {

// SplitMix64 output function, used to derive independent sub-seeds.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index);

// Deterministic random source. The engine is mt19937_64, whose bit stream is
// fixed by the language standard; uniform and Gaussian variates are derived
// explicitly (53-bit mantissa extraction, Box-Muller) instead of through
// std::*_distribution, whose streams vary between standard libraries.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  double uniform();   // in [0, 1)
  double gaussian();  // standard normal
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

ComplexMatrix random_gaussian_matrix(Index rows, Index cols, Prng& rng);

// Random matrix with orthonormal columns: Gaussian draw, then Gram-Schmidt.
ComplexMatrix random_isometry(Index rows, Index cols, Prng& rng);

// Random full-rank state G G^dag / Tr[G G^dag] for a square Gaussian G.
DensityState random_density(Index dim, std::uint64_t seed);
DensityState random_density(Index dim, Prng& rng);

struct ChannelSpec {
  Index dim_in = 0;
  Index dim_out = 0;
  Index rank = 0;
  bool trace_preserving = true;
  std::uint64_t seed = 0;
};

// Deterministic random operation with the requested Choi rank. Trace
// preserving: Kraus blocks of a random isometry from H to C^rank (x) K, which
// needs rank * dim_out >= dim_in. Trace decreasing: the same blocks scaled by
// one uniform factor in [0.3, 0.9]. Identical specs give identical bits
// within one build.
QuantumOperation random_channel(const ChannelSpec& spec);

// Rewrites the Kraus list through an isometric matrix, E'_j = sum_i y(j, i) E_i.
// The mixed list describes the same map.
QuantumOperation mix_kraus(const QuantumOperation& op, const ComplexMatrix& y);

// Worst Frobenius deviation between the dilation's action and the map's action
// over `trials` seeded random states. Trial t draws its state from the t-th
// SplitMix64 sub-seed of `seed`.
double reconstruction_error(const Dilation& dil, const QuantumOperation& op, int trials,
                            std::uint64_t seed);

// Complete positivity audit: smallest Choi eigenvalue within slack of zero.
bool cp_audit(const QuantumOperation& op);
bool choi_matrix_is_positive(const ComplexMatrix& choi_matrix);

}  // namespace qdilate
