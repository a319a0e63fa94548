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

#include <variant>
#include <vector>

#include "qdilate/channels.hpp"
#include "qdilate/linalg.hpp"

namespace qdilate {

// Which Kraus decomposition a builder starts from. The canonical form gives
// the smallest ancilla; any other stored decomposition realizes the same map
// with a larger (or equal) measurement projector.
enum class KrausForm { canonical, as_given };

// Vertical stack of the Kraus operators into a single contraction
// E = sum_i |l_i> (x) E_i from H to L (x) K, zero-padded up to dim_l blocks.
// Satisfies E^dag E = K and recovers the map as Tr_L[E rho E^dag].
ComplexMatrix stinespring_contraction(const QuantumOperation& op, Index dim_l);

// Splits a positive semidefinite P into the fewest dim_k x n blocks A_i with
// sum_i A_i^dag A_i = P, namely ceil(rank(P) / dim_k) of them. Block i collects
// eigenvector rows (i-1)*dim_k+1 .. i*dim_k, each scaled by the square root of
// its eigenvalue.
std::vector<ComplexMatrix> complementary_kraus(const ComplexMatrix& p, Index dim_k);

// Isometry V from H to L (x) K carrying the map in dual form:
// apply_dual(op, X) = V^dag (Sigma (x) X) V, with Sigma the projector onto the
// ancilla slots that hold the map's own Kraus operators. The remaining slots
// hold a complementary split of I - K, which is what makes V an isometry.
// Sigma = I_L exactly when the map is trace preserving.
struct IsometricDilation {
  ComplexMatrix v;
  ComplexMatrix sigma;        // dim_l x dim_l projector
  ComplexMatrix sigma_basis;  // dim_l x rank(sigma), orthonormal columns
  Index dim_l = 0;
  Index dim_in = 0;
  Index dim_out = 0;
};
IsometricDilation isometric_dilation(const QuantumOperation& op,
                                     KrausForm form = KrausForm::canonical);

// Unitary realization on the direct sum H (+) H_D: U extends V to a square
// unitary and the trivial isometry D embeds the input state as rho (+) 0.
// The map is Tr_L[(Sigma (x) I_K) U (D rho D^dag) U^dag].
struct FreeDilation {
  ComplexMatrix u;      // (dim_l * dim_out) square
  ComplexMatrix d;      // (dim_l * dim_out) x dim_in, canonical embedding
  ComplexMatrix sigma;  // dim_l x dim_l projector
  Index dim_l = 0;
  Index dim_d = 0;  // dim_l * dim_out - dim_in
  Index dim_in = 0;
  Index dim_out = 0;
};
FreeDilation free_dilation(const QuantumOperation& op, KrausForm form = KrausForm::canonical);
ComplexMatrix apply_free(const FreeDilation& dil, const ComplexMatrix& rho);
ComplexMatrix apply_free(const FreeDilation& dil, const DensityState& rho);

// Unitary realization on a tensor product: an ancilla R prepared in |phi_R>
// interacts with the input through one unitary U from R (x) H to L (x) K.
// dim_l is padded up (with inert ancilla slots) until dim_l * dim_out is a
// multiple of dim_in, so both sides match and U can be square. The map is
// Tr_L[(Sigma (x) I_K) U (|phi><phi| (x) rho) U^dag].
struct InteractingDilation {
  ComplexMatrix u;  // (dim_r * dim_in) square, equals (dim_l * dim_out)
  ComplexVector phi_r;
  ComplexMatrix sigma;
  ComplexMatrix sigma_basis;
  Index dim_r = 0;
  Index dim_l = 0;
  Index dim_in = 0;
  Index dim_out = 0;
};
InteractingDilation interacting_dilation(const QuantumOperation& op,
                                         KrausForm form = KrausForm::canonical);
ComplexMatrix apply_interacting(const InteractingDilation& dil, const ComplexMatrix& rho);
ComplexMatrix apply_interacting(const InteractingDilation& dil, const DensityState& rho);

// Unitary realization driven by a two-level shift: W on S is nilpotent of
// order two with W W^dag + W^dag W = I, and U combines the square-completed
// interaction V~ = V (<phi_R| (x) I_H) with its defect projectors,
//   U = WW^dag (x) V~  -  W^dag W (x) V~^dag  +  W^dag (x) (I - V~^dag V~)
//       + W (x) (I - V~ V~^dag),
// acting on S (x) L (x) K. The ancilla pair starts in sigma_s (x) |phi><phi|.
struct HalmosDilation {
  ComplexMatrix u;  // (dim_s * dim_l * dim_out) square
  DensityState sigma_s;
  ComplexMatrix w;  // shift on S
  ComplexVector phi_r;
  ComplexMatrix sigma;
  ComplexMatrix sigma_basis;
  Index dim_s = 0;
  Index dim_r = 0;
  Index dim_l = 0;
  Index dim_in = 0;
  Index dim_out = 0;
};
HalmosDilation halmos_dilation(const QuantumOperation& op, Index dim_s = 2,
                               KrausForm form = KrausForm::canonical);
ComplexMatrix apply_halmos(const HalmosDilation& dil, const ComplexMatrix& rho);
ComplexMatrix apply_halmos(const HalmosDilation& dil, const DensityState& rho);

// Unitary realization whose k-th power tracks the k-th power of the map for
// k = 1..n, for trace-preserving maps on one space. W cycles n ancilla copies
// so each round consumes a fresh |phi_R>:
//   W = (cyclic ancilla rotation) (I (x) U) on R^{(x)n} (x) H,
//   E^k(rho) = Tr_ancillas[W^k (sigma_state (x) rho) W^dag k].
// Powers of the single-copy U do not do this; U^k reuses a spent ancilla.
struct PowerDilation {
  ComplexMatrix w;            // (dim_r^n * dim_h) square
  ComplexMatrix sigma_state;  // |phi><phi|^{(x)n}
  ComplexVector phi_r;
  int n = 0;
  Index dim_r = 0;
  Index dim_h = 0;
};
PowerDilation power_dilation(const QuantumOperation& op, int n);
ComplexMatrix apply_power(const PowerDilation& dil, const ComplexMatrix& rho, int k);
ComplexMatrix apply_power(const PowerDilation& dil, const DensityState& rho, int k);

using Dilation = std::variant<FreeDilation, InteractingDilation, HalmosDilation, PowerDilation>;

// Single-step action of any dilation kind (power dilations at k = 1).
ComplexMatrix apply_dilation(const Dilation& dil, const ComplexMatrix& rho);
ComplexMatrix apply_dilation(const Dilation& dil, const DensityState& rho);

Index dilation_dim_in(const Dilation& dil);
Index dilation_dim_out(const Dilation& dil);

}  // namespace qdilate
