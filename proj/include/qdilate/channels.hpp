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

#include <vector>

#include "qdilate/linalg.hpp"

namespace qdilate {

// A completely positive, trace-non-increasing linear map between finite
// dimensional spaces, held as Kraus operators (each dim_out x dim_in).
// Construction validates shapes, finiteness and sum E^dag E <= I. An empty
// operator list is the zero map.
struct QuantumOperation {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<ComplexMatrix> kraus;

  QuantumOperation() = default;
  QuantumOperation(std::vector<ComplexMatrix> operators, Index dim_in, Index dim_out);
};

// Unit-trace positive semidefinite state. Construction validates Hermiticity,
// positivity and trace.
struct DensityState {
  Index dim = 0;
  ComplexMatrix matrix;

  DensityState() = default;
  explicit DensityState(ComplexMatrix m);
};

// Choi matrix of a map, living on (output (x) input) with the row-major
// operator vectorization |A>> = sum_{n,m} A(n,m) |n>|m>.
struct ChoiOperator {
  Index dim_in = 0;
  Index dim_out = 0;
  ComplexMatrix matrix;  // side dim_out * dim_in
};

// K = sum_n E_n^dag E_n, the effect whose expectation gives the occurrence
// probability of the operation.
ComplexMatrix effect_operator(const QuantumOperation& op);

// Schroedinger action sum_n E_n rho E_n^dag. The raw-matrix overload skips
// state validation so intermediate (possibly non-normalized) operators can be
// pushed through. A function object rather than a function: ordinary lookup
// finding the object keeps argument-dependent lookup from dragging std::apply
// into unqualified calls (std is an associated namespace of every
// std::complex matrix).
struct ApplyFn {
  ComplexMatrix operator()(const QuantumOperation& op, const ComplexMatrix& rho) const;
  ComplexMatrix operator()(const QuantumOperation& op, const DensityState& rho) const;
};
inline constexpr ApplyFn apply{};

// Heisenberg action sum_n E_n^dag X E_n on an output-side observable. It is
// the adjoint of apply() under the trace pairing, and maps I to the effect K.
ComplexMatrix apply_dual(const QuantumOperation& op, const ComplexMatrix& observable);

ChoiOperator choi(const QuantumOperation& op);

// Schroedinger action recovered from the Choi matrix alone:
// out = Tr_in[(I_out (x) rho^T) R], with the transpose taken in the
// computational basis.
ComplexMatrix apply_via_choi(const ChoiOperator& r, const ComplexMatrix& rho);

// Minimal Kraus list from the Choi eigendecomposition: one operator per
// nonzero eigenvalue, each sqrt(lambda) times the unfolded eigenvector, with
// the first nonzero entry (row-major scan) rotated real positive. The list
// length equals the Choi rank; the zero map comes back with no operators.
QuantumOperation canonical_kraus(const QuantumOperation& op);

// Tr[K rho], clamped into [0, 1] against roundoff.
double occurrence_probability(const QuantumOperation& op, const DensityState& rho);

bool is_trace_preserving(const QuantumOperation& op);

// Rank of the Choi matrix under the shared eigenvalue cutoff.
Index choi_rank(const QuantumOperation& op);

}  // namespace qdilate
