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

#include "qdilate/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdilate {

namespace {

constexpr double negative_weight_floor = -1e-12;

// How far apart the dilation's map and the operation may sit before the
// majorization comparison is meaningless.
constexpr double realization_gate = 1e-8;

RealVector sorted_padded(const RealVector& v, Index size) {
  RealVector out = RealVector::Zero(size);
  out.head(v.size()) = v;
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

BoundsReport audit(const QuantumOperation& op, Index dim_l, Index sigma_rank) {
  BoundsReport report = ancilla_lower_bound(op);
  report.actual_dim_l = dim_l;
  report.sigma_rank = sigma_rank;
  report.satisfied = dim_l >= report.lower_bound_dim_l && sigma_rank >= report.c &&
                     dim_l * op.dim_out >= op.dim_in;
  return report;
}

Index projector_rank(const ComplexMatrix& sigma) {
  return static_cast<Index>(std::llround(sigma.trace().real()));
}

}  // namespace

bool is_majorized_by(const RealVector& x, const RealVector& y) {
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] < negative_weight_floor)
      throw std::invalid_argument("is_majorized_by: negative entry in the left vector");
  for (Index i = 0; i < y.size(); ++i)
    if (y[i] < negative_weight_floor)
      throw std::invalid_argument("is_majorized_by: negative entry in the right vector");

  const Index size = std::max(x.size(), y.size());
  if (size == 0) return true;
  const RealVector xs = sorted_padded(x, size);
  const RealVector ys = sorted_padded(y, size);

  double run_x = 0.0;
  double run_y = 0.0;
  for (Index i = 0; i < size; ++i) {
    run_x += xs[i];
    run_y += ys[i];
    if (run_x > run_y + tol::majorization) return false;
  }
  return std::abs(run_x - run_y) <= tol::majorization;
}

RealVector dilation_majorization_vector(const InteractingDilation& dil) {
  const Index rank = dil.sigma_basis.cols();
  const ComplexMatrix into = kron(dil.phi_r, ComplexMatrix::Identity(dil.dim_in, dil.dim_in));
  RealVector weights(rank);
  for (Index i = 0; i < rank; ++i) {
    const ComplexMatrix bra = kron(ComplexMatrix(dil.sigma_basis.col(i).adjoint()),
                                   ComplexMatrix::Identity(dil.dim_out, dil.dim_out));
    weights[i] = (bra * dil.u * into).squaredNorm();
  }
  return weights;
}

MajorizationReport check_majorization_constraint(const InteractingDilation& dil,
                                                 const QuantumOperation& op) {
  if (dil.dim_in != op.dim_in || dil.dim_out != op.dim_out)
    throw std::invalid_argument("check_majorization_constraint: dimension mismatch");

  // Complete basis check: agreement on every matrix unit is agreement as maps.
  double worst = 0.0;
  ComplexMatrix unit = ComplexMatrix::Zero(op.dim_in, op.dim_in);
  for (Index m = 0; m < op.dim_in; ++m)
    for (Index l = 0; l < op.dim_in; ++l) {
      unit(m, l) = 1.0;
      worst = std::max(worst, (apply_interacting(dil, unit) - qdilate::apply(op, unit)).norm());
      unit(m, l) = 0.0;
    }
  if (worst > realization_gate) {
    std::ostringstream msg;
    msg << "check_majorization_constraint: the dilation does not realize the operation "
        << "(worst basis deviation " << worst << ")";
    throw std::runtime_error(msg.str());
  }

  const QuantumOperation canonical = canonical_kraus(op);
  RealVector canonical_weights(static_cast<Index>(canonical.kraus.size()));
  for (Index i = 0; i < canonical_weights.size(); ++i)
    canonical_weights[i] = canonical.kraus[static_cast<std::size_t>(i)].squaredNorm();

  const RealVector candidate = dilation_majorization_vector(dil);
  const Index size = std::max(candidate.size(), canonical_weights.size());

  MajorizationReport report;
  report.candidate = sorted_padded(candidate, size);
  report.canonical = sorted_padded(canonical_weights, size);
  report.majorized = is_majorized_by(candidate, canonical_weights);
  double run_x = 0.0;
  double run_y = 0.0;
  for (Index i = 0; i < size; ++i) {
    run_x += report.candidate[i];
    run_y += report.canonical[i];
    report.partial_sums.emplace_back(run_x, run_y);
  }
  return report;
}

BoundsReport ancilla_lower_bound(const QuantumOperation& op) {
  BoundsReport report;
  report.c = choi_rank(op);
  const ComplexMatrix defect =
      ComplexMatrix::Identity(op.dim_in, op.dim_in) - effect_operator(op);
  report.rank_defect = rank_from_eigenvalues(hermitian_eig(defect).eigenvalues);
  report.lower_bound_dim_l = report.c + (report.rank_defect + op.dim_out - 1) / op.dim_out;
  report.satisfied = report.lower_bound_dim_l * op.dim_out >= op.dim_in;
  return report;
}

BoundsReport check_bounds(const IsometricDilation& dil, const QuantumOperation& op) {
  return audit(op, dil.dim_l, dil.sigma_basis.cols());
}

BoundsReport check_bounds(const FreeDilation& dil, const QuantumOperation& op) {
  return audit(op, dil.dim_l, projector_rank(dil.sigma));
}

BoundsReport check_bounds(const InteractingDilation& dil, const QuantumOperation& op) {
  return audit(op, dil.dim_l, dil.sigma_basis.cols());
}

BoundsReport check_bounds(const HalmosDilation& dil, const QuantumOperation& op) {
  return audit(op, dil.dim_l, dil.sigma_basis.cols());
}

BoundsReport check_bounds(const PowerDilation& dil, const QuantumOperation& op) {
  // For the power scheme the measurement projector is the identity on L = R.
  return audit(op, dil.dim_r, dil.dim_r);
}

BoundsReport check_bounds(const Dilation& dil, const QuantumOperation& op) {
  return std::visit([&op](const auto& d) { return check_bounds(d, op); }, dil);
}

}  // namespace qdilate
