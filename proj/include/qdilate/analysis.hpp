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

#include <optional>
#include <utility>
#include <vector>

#include "qdilate/channels.hpp"
#include "qdilate/dilations.hpp"
#include "qdilate/linalg.hpp"

namespace qdilate {

// True when x is majorized by y: with both vectors sorted non-increasing and
// the shorter one zero padded, every prefix sum of x stays within slack below
// the matching prefix sum of y, and the totals agree within the same slack.
// Entries are squared norms; anything below -1e-12 is rejected as input error.
// This is a necessary condition on realizable weight vectors, not a
// sufficient one.
bool is_majorized_by(const RealVector& x, const RealVector& y);

// Squared Frobenius norms ||(<sigma_i| (x) I_K) U (|phi_R> (x) I_H)||^2, one
// entry per basis vector of the measurement projector's range. These are the
// weights of the Kraus decomposition the dilation induces.
RealVector dilation_majorization_vector(const InteractingDilation& dil);

struct MajorizationReport {
  RealVector candidate;  // sorted non-increasing
  RealVector canonical;  // sorted non-increasing
  bool majorized = false;
  std::vector<std::pair<double, double>> partial_sums;  // (candidate, canonical) prefixes
};

// Verifies that the dilation realizes the operation (complete basis check,
// throws if the maps disagree), then compares the dilation's weight vector
// against the canonical Kraus weights.
MajorizationReport check_majorization_constraint(const InteractingDilation& dil,
                                                 const QuantumOperation& op);

struct BoundsReport {
  Index c = 0;                      // canonical Kraus rank
  Index rank_defect = 0;            // rank(I - K)
  Index lower_bound_dim_l = 0;      // c + ceil(rank_defect / dim_out)
  std::optional<Index> actual_dim_l;
  std::optional<Index> sigma_rank;
  bool satisfied = false;
};

// Minimal ancilla accounting for the operation alone. The reported bound also
// obeys lower_bound_dim_l * dim_out >= dim_in.
BoundsReport ancilla_lower_bound(const QuantumOperation& op);

// Audits a dilation's dimensions against the bound: dim_l >= lower bound,
// rank(Sigma) >= c, and dim_l * dim_out >= dim_in must all hold.
BoundsReport check_bounds(const IsometricDilation& dil, const QuantumOperation& op);
BoundsReport check_bounds(const FreeDilation& dil, const QuantumOperation& op);
BoundsReport check_bounds(const InteractingDilation& dil, const QuantumOperation& op);
BoundsReport check_bounds(const HalmosDilation& dil, const QuantumOperation& op);
BoundsReport check_bounds(const PowerDilation& dil, const QuantumOperation& op);
BoundsReport check_bounds(const Dilation& dil, const QuantumOperation& op);

}  // namespace qdilate
