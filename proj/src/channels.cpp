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

#include "qdilate/channels.hpp"

#include <cmath>
#include <sstream>

namespace qdilate {

namespace {

// Row-major flattening, matching the |A>> convention of the Choi matrix.
ComplexVector vec_row_major(const ComplexMatrix& a) {
  ComplexVector v(a.rows() * a.cols());
  for (Index n = 0; n < a.rows(); ++n)
    for (Index m = 0; m < a.cols(); ++m) v[n * a.cols() + m] = a(n, m);
  return v;
}

ComplexMatrix unvec_row_major(const ComplexVector& v, Index rows, Index cols) {
  ComplexMatrix a(rows, cols);
  for (Index n = 0; n < rows; ++n)
    for (Index m = 0; m < cols; ++m) a(n, m) = v[n * cols + m];
  return a;
}

}  // namespace

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> operators, Index in, Index out)
    : dim_in(in), dim_out(out), kraus(std::move(operators)) {
  if (dim_in < 1 || dim_out < 1)
    throw std::invalid_argument("quantum operation: dimensions must be positive");
  for (const auto& e : kraus) {
    if (e.rows() != dim_out || e.cols() != dim_in)
      throw std::invalid_argument("quantum operation: Kraus operator shape mismatch");
    if (!e.allFinite())
      throw std::invalid_argument("quantum operation: Kraus operator has non-finite entries");
  }
  const auto eig = hermitian_eig(effect_operator(*this));
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues[0] > 1.0 + tol::psd) {
    std::ostringstream msg;
    msg << "quantum operation is trace increasing: largest eigenvalue of sum E^dag E is "
        << eig.eigenvalues[0];
    throw std::invalid_argument(msg.str());
  }
}

DensityState::DensityState(ComplexMatrix m) : dim(m.rows()), matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("density state: matrix must be square");
  if (!matrix.allFinite())
    throw std::invalid_argument("density state: matrix has non-finite entries");
  if ((matrix - matrix.adjoint()).norm() > tol::hermitian)
    throw std::invalid_argument("density state: matrix is not Hermitian within tolerance");
  if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > tol::hermitian)
    throw std::invalid_argument("density state: trace must be 1");
  const auto eig = hermitian_eig(matrix);
  if (eig.eigenvalues[dim - 1] < -tol::psd)
    throw std::invalid_argument("density state: matrix is not positive semidefinite");
}

ComplexMatrix effect_operator(const QuantumOperation& op) {
  ComplexMatrix k = ComplexMatrix::Zero(op.dim_in, op.dim_in);
  for (const auto& e : op.kraus) k += e.adjoint() * e;
  return k;
}

ComplexMatrix ApplyFn::operator()(const QuantumOperation& op, const ComplexMatrix& rho) const {
  if (rho.rows() != op.dim_in || rho.cols() != op.dim_in)
    throw std::invalid_argument("apply: state dimension does not match dim_in");
  ComplexMatrix out = ComplexMatrix::Zero(op.dim_out, op.dim_out);
  for (const auto& e : op.kraus) out += e * rho * e.adjoint();
  return out;
}

ComplexMatrix ApplyFn::operator()(const QuantumOperation& op, const DensityState& rho) const {
  return qdilate::apply(op, rho.matrix);
}

ComplexMatrix apply_dual(const QuantumOperation& op, const ComplexMatrix& observable) {
  if (observable.rows() != op.dim_out || observable.cols() != op.dim_out)
    throw std::invalid_argument("apply_dual: observable dimension does not match dim_out");
  ComplexMatrix out = ComplexMatrix::Zero(op.dim_in, op.dim_in);
  for (const auto& e : op.kraus) out += e.adjoint() * observable * e;
  return out;
}

ChoiOperator choi(const QuantumOperation& op) {
  const Index side = composite_dimension(op.dim_out, op.dim_in);
  ComplexMatrix r = ComplexMatrix::Zero(side, side);
  for (const auto& e : op.kraus) {
    const ComplexVector v = vec_row_major(e);
    r += v * v.adjoint();
  }
  return ChoiOperator{op.dim_in, op.dim_out, std::move(r)};
}

ComplexMatrix apply_via_choi(const ChoiOperator& r, const ComplexMatrix& rho) {
  if (rho.rows() != r.dim_in || rho.cols() != r.dim_in)
    throw std::invalid_argument("apply_via_choi: state dimension does not match dim_in");
  const ComplexMatrix lifted = kron(ComplexMatrix::Identity(r.dim_out, r.dim_out),
                                    ComplexMatrix(rho.transpose())) *
                               r.matrix;
  return partial_trace_second(lifted, r.dim_out, r.dim_in);
}

QuantumOperation canonical_kraus(const QuantumOperation& op) {
  const ChoiOperator r = choi(op);
  const HermitianEig eig = hermitian_eig(r.matrix);
  const Index rank = rank_from_eigenvalues(eig.eigenvalues);
  std::vector<ComplexMatrix> list;
  list.reserve(static_cast<std::size_t>(rank));
  for (Index i = 0; i < rank; ++i) {
    ComplexVector v = eig.eigenvectors.col(i);
    // Gauge: first entry of the unfolded operator, row-major, real positive.
    for (Index j = 0; j < v.size(); ++j) {
      const double mag = std::abs(v[j]);
      if (mag > tol::phase_gauge) {
        v *= std::conj(v[j]) / mag;
        break;
      }
    }
    list.push_back(std::sqrt(eig.eigenvalues[i]) * unvec_row_major(v, op.dim_out, op.dim_in));
  }
  return QuantumOperation(std::move(list), op.dim_in, op.dim_out);
}

double occurrence_probability(const QuantumOperation& op, const DensityState& rho) {
  if (rho.dim != op.dim_in)
    throw std::invalid_argument("occurrence_probability: state dimension does not match dim_in");
  const double p = (effect_operator(op) * rho.matrix).trace().real();
  return std::min(1.0, std::max(0.0, p));
}

bool is_trace_preserving(const QuantumOperation& op) {
  const ComplexMatrix k = effect_operator(op);
  return (k - ComplexMatrix::Identity(op.dim_in, op.dim_in)).norm() <= tol::trace_preserving;
}

Index choi_rank(const QuantumOperation& op) {
  return rank_from_eigenvalues(hermitian_eig(choi(op).matrix).eigenvalues);
}

}  // namespace qdilate
