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

#include "qdilate/dilations.hpp"

#include <cmath>

namespace qdilate {

namespace {

// Kraus list a builder starts from. Rank-zero maps still need one ancilla slot
// inside the measurement projector (it must not vanish), so they get a single
// zero operator.
std::vector<ComplexMatrix> builder_kraus(const QuantumOperation& op, KrausForm form) {
  std::vector<ComplexMatrix> list =
      form == KrausForm::canonical ? canonical_kraus(op).kraus : op.kraus;
  if (list.empty()) list.push_back(ComplexMatrix::Zero(op.dim_out, op.dim_in));
  return list;
}

ComplexMatrix projector_on_first(Index side, Index count) {
  ComplexMatrix p = ComplexMatrix::Zero(side, side);
  p.topLeftCorner(count, count) = ComplexMatrix::Identity(count, count);
  return p;
}

Index sigma_rank(const IsometricDilation& iso) { return iso.sigma_basis.cols(); }

}  // namespace

ComplexMatrix stinespring_contraction(const QuantumOperation& op, Index dim_l) {
  const Index blocks = static_cast<Index>(op.kraus.size());
  if (dim_l < blocks)
    throw std::invalid_argument("stinespring_contraction: dim_l smaller than the Kraus count");
  const Index rows = composite_dimension(dim_l, op.dim_out);
  ComplexMatrix e = ComplexMatrix::Zero(rows, op.dim_in);
  for (Index i = 0; i < blocks; ++i)
    e.block(i * op.dim_out, 0, op.dim_out, op.dim_in) = op.kraus[static_cast<std::size_t>(i)];
  return e;
}

std::vector<ComplexMatrix> complementary_kraus(const ComplexMatrix& p, Index dim_k) {
  if (dim_k < 1) throw std::invalid_argument("complementary_kraus: dim_k must be positive");
  const HermitianEig eig = hermitian_eig(p);
  const Index n = p.rows();
  if (n > 0 && eig.eigenvalues[n - 1] < -tol::psd)
    throw std::invalid_argument("complementary_kraus: matrix is not positive semidefinite");
  const Index rank = rank_from_eigenvalues(eig.eigenvalues);
  const Index count = (rank + dim_k - 1) / dim_k;
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    ComplexMatrix a = ComplexMatrix::Zero(dim_k, n);
    for (Index j = 0; j < dim_k; ++j) {
      const Index m = i * dim_k + j;
      if (m >= rank) break;
      // Row j is <v_m| with the eigenvector kept unnormalized,
      // <v_m|v_m> = lambda_m, so the blocks sum back to P.
      a.row(j) = std::sqrt(eig.eigenvalues[m]) * eig.eigenvectors.col(m).adjoint();
    }
    out.push_back(std::move(a));
  }
  return out;
}

IsometricDilation isometric_dilation(const QuantumOperation& op, KrausForm form) {
  const std::vector<ComplexMatrix> es = builder_kraus(op, form);
  const ComplexMatrix defect =
      ComplexMatrix::Identity(op.dim_in, op.dim_in) - effect_operator(op);
  const std::vector<ComplexMatrix> fs = complementary_kraus(defect, op.dim_out);

  const Index rank = static_cast<Index>(es.size());
  const Index dim_l = rank + static_cast<Index>(fs.size());
  const Index rows = composite_dimension(dim_l, op.dim_out);

  ComplexMatrix v = ComplexMatrix::Zero(rows, op.dim_in);
  for (Index i = 0; i < rank; ++i)
    v.block(i * op.dim_out, 0, op.dim_out, op.dim_in) = es[static_cast<std::size_t>(i)];
  for (Index j = 0; j < static_cast<Index>(fs.size()); ++j)
    v.block((rank + j) * op.dim_out, 0, op.dim_out, op.dim_in) = fs[static_cast<std::size_t>(j)];
  if (!is_isometry(v))
    throw std::runtime_error("isometric_dilation: numerical breakdown, V is not an isometry");

  IsometricDilation dil;
  dil.v = std::move(v);
  dil.sigma = projector_on_first(dim_l, rank);
  dil.sigma_basis = ComplexMatrix::Identity(dim_l, dim_l).leftCols(rank);
  dil.dim_l = dim_l;
  dil.dim_in = op.dim_in;
  dil.dim_out = op.dim_out;
  return dil;
}

FreeDilation free_dilation(const QuantumOperation& op, KrausForm form) {
  const IsometricDilation iso = isometric_dilation(op, form);
  const Index big = iso.dim_l * op.dim_out;

  FreeDilation dil;
  dil.u = complete_to_unitary(iso.v);
  dil.d = ComplexMatrix::Zero(big, op.dim_in);
  dil.d.topRows(op.dim_in) = ComplexMatrix::Identity(op.dim_in, op.dim_in);
  dil.sigma = iso.sigma;
  dil.dim_l = iso.dim_l;
  dil.dim_d = big - op.dim_in;
  dil.dim_in = op.dim_in;
  dil.dim_out = op.dim_out;
  return dil;
}

ComplexMatrix apply_free(const FreeDilation& dil, const ComplexMatrix& rho) {
  if (rho.rows() != dil.dim_in || rho.cols() != dil.dim_in)
    throw std::invalid_argument("apply_free: state dimension does not match dim_in");
  const ComplexMatrix embedded = dil.d * rho * dil.d.adjoint();
  const ComplexMatrix evolved = dil.u * embedded * dil.u.adjoint();
  const ComplexMatrix projected =
      kron(dil.sigma, ComplexMatrix::Identity(dil.dim_out, dil.dim_out)) * evolved;
  return partial_trace_first(projected, dil.dim_l, dil.dim_out);
}

ComplexMatrix apply_free(const FreeDilation& dil, const DensityState& rho) {
  return apply_free(dil, rho.matrix);
}

InteractingDilation interacting_dilation(const QuantumOperation& op, KrausForm form) {
  const IsometricDilation iso = isometric_dilation(op, form);

  // Pad the ancilla until L (x) K and R (x) H can be identified, i.e. until
  // dim_in divides dim_l * dim_out. The extra slots carry zero operators and
  // stay outside the measurement projector.
  Index dim_l = iso.dim_l;
  while ((dim_l * op.dim_out) % op.dim_in != 0) ++dim_l;
  const Index big = composite_dimension(dim_l, op.dim_out);

  ComplexMatrix v = ComplexMatrix::Zero(big, op.dim_in);
  v.topRows(iso.v.rows()) = iso.v;

  InteractingDilation dil;
  dil.u = complete_to_unitary(v);
  dil.dim_r = big / op.dim_in;
  dil.phi_r = ComplexVector::Zero(dil.dim_r);
  dil.phi_r[0] = 1.0;
  dil.sigma = projector_on_first(dim_l, sigma_rank(iso));
  dil.sigma_basis = ComplexMatrix::Identity(dim_l, dim_l).leftCols(sigma_rank(iso));
  dil.dim_l = dim_l;
  dil.dim_in = op.dim_in;
  dil.dim_out = op.dim_out;
  return dil;
}

ComplexMatrix apply_interacting(const InteractingDilation& dil, const ComplexMatrix& rho) {
  if (rho.rows() != dil.dim_in || rho.cols() != dil.dim_in)
    throw std::invalid_argument("apply_interacting: state dimension does not match dim_in");
  const ComplexMatrix input = kron(ComplexMatrix(dil.phi_r * dil.phi_r.adjoint()), rho);
  const ComplexMatrix evolved = dil.u * input * dil.u.adjoint();
  const ComplexMatrix projected =
      kron(dil.sigma, ComplexMatrix::Identity(dil.dim_out, dil.dim_out)) * evolved;
  return partial_trace_first(projected, dil.dim_l, dil.dim_out);
}

ComplexMatrix apply_interacting(const InteractingDilation& dil, const DensityState& rho) {
  return apply_interacting(dil, rho.matrix);
}

HalmosDilation halmos_dilation(const QuantumOperation& op, Index dim_s, KrausForm form) {
  if (dim_s < 2 || dim_s % 2 != 0)
    throw std::invalid_argument("halmos_dilation: dim_s must be even and at least 2");
  const InteractingDilation inter = interacting_dilation(op, form);
  const Index big = inter.dim_l * op.dim_out;

  // V~ is the interaction padded to a square operator: V on the |phi_R> slice
  // of R (x) H, zero elsewhere.
  ComplexMatrix v_tilde = ComplexMatrix::Zero(big, big);
  v_tilde.leftCols(op.dim_in) = inter.u.leftCols(op.dim_in);

  ComplexMatrix w = ComplexMatrix::Zero(dim_s, dim_s);
  for (Index b = 0; 2 * b + 1 < dim_s; ++b) w(2 * b, 2 * b + 1) = 1.0;
  const ComplexMatrix ww = w * w.adjoint();
  const ComplexMatrix dw = w.adjoint() * w;

  const ComplexMatrix eye = ComplexMatrix::Identity(big, big);
  const ComplexMatrix support = v_tilde.adjoint() * v_tilde;  // |phi><phi| (x) I_H
  const ComplexMatrix range = v_tilde * v_tilde.adjoint();    // V V^dag

  HalmosDilation dil;
  dil.u = kron(ww, v_tilde) - kron(dw, ComplexMatrix(v_tilde.adjoint())) +
          kron(ComplexMatrix(w.adjoint()), ComplexMatrix(eye - support)) +
          kron(w, ComplexMatrix(eye - range));
  dil.sigma_s = DensityState(ComplexMatrix(ww / ww.trace().real()));
  dil.w = w;
  dil.phi_r = inter.phi_r;
  dil.sigma = inter.sigma;
  dil.sigma_basis = inter.sigma_basis;
  dil.dim_s = dim_s;
  dil.dim_r = inter.dim_r;
  dil.dim_l = inter.dim_l;
  dil.dim_in = op.dim_in;
  dil.dim_out = op.dim_out;
  return dil;
}

ComplexMatrix apply_halmos(const HalmosDilation& dil, const ComplexMatrix& rho) {
  if (rho.rows() != dil.dim_in || rho.cols() != dil.dim_in)
    throw std::invalid_argument("apply_halmos: state dimension does not match dim_in");
  const ComplexMatrix pair = kron(ComplexMatrix(dil.phi_r * dil.phi_r.adjoint()), rho);
  const ComplexMatrix input = kron(dil.sigma_s.matrix, pair);
  const ComplexMatrix evolved = dil.u * input * dil.u.adjoint();
  const Index big = dil.dim_l * dil.dim_out;
  const ComplexMatrix projected =
      kron(ComplexMatrix::Identity(dil.dim_s, dil.dim_s),
           kron(dil.sigma, ComplexMatrix::Identity(dil.dim_out, dil.dim_out))) *
      evolved;
  const ComplexMatrix no_shift = partial_trace_first(projected, dil.dim_s, big);
  return partial_trace_first(no_shift, dil.dim_l, dil.dim_out);
}

ComplexMatrix apply_halmos(const HalmosDilation& dil, const DensityState& rho) {
  return apply_halmos(dil, rho.matrix);
}

PowerDilation power_dilation(const QuantumOperation& op, int n) {
  if (n < 1) throw std::invalid_argument("power_dilation: n must be at least 1");
  if (op.dim_in != op.dim_out)
    throw std::invalid_argument(
        "power_dilation: input and output spaces must coincide, otherwise the map "
        "cannot be iterated");
  if (!is_trace_preserving(op))
    throw std::invalid_argument(
        "power_dilation: the map must be trace preserving, otherwise the ancilla "
        "rotation scheme does not compose");
  const InteractingDilation inter = interacting_dilation(op, KrausForm::canonical);
  // Trace preservation on a single space means no padding happened, so the
  // preparation and measurement ancillas coincide and U acts on R (x) H.

  Index copies = 1;
  for (int i = 0; i < n - 1; ++i) copies = composite_dimension(copies, inter.dim_r);
  const ComplexMatrix rotation = cyclic_ancilla_permutation(n, inter.dim_r, op.dim_in);

  PowerDilation dil;
  dil.w = rotation * kron(ComplexMatrix::Identity(copies, copies), inter.u);
  const ComplexMatrix phi_outer = inter.phi_r * inter.phi_r.adjoint();
  ComplexMatrix sigma_state = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) sigma_state = kron(sigma_state, phi_outer);
  dil.sigma_state = std::move(sigma_state);
  dil.phi_r = inter.phi_r;
  dil.n = n;
  dil.dim_r = inter.dim_r;
  dil.dim_h = op.dim_in;
  return dil;
}

ComplexMatrix apply_power(const PowerDilation& dil, const ComplexMatrix& rho, int k) {
  if (k < 1 || k > dil.n)
    throw std::invalid_argument("apply_power: k must lie in 1..n");
  if (rho.rows() != dil.dim_h || rho.cols() != dil.dim_h)
    throw std::invalid_argument("apply_power: state dimension does not match the system");
  ComplexMatrix wk = dil.w;
  for (int i = 1; i < k; ++i) wk = dil.w * wk;
  const ComplexMatrix input = kron(dil.sigma_state, rho);
  const ComplexMatrix evolved = wk * input * wk.adjoint();
  return partial_trace_first(evolved, dil.sigma_state.rows(), dil.dim_h);
}

ComplexMatrix apply_power(const PowerDilation& dil, const DensityState& rho, int k) {
  return apply_power(dil, rho.matrix, k);
}

ComplexMatrix apply_dilation(const Dilation& dil, const ComplexMatrix& rho) {
  return std::visit(
      [&rho](const auto& d) -> ComplexMatrix {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FreeDilation>)
          return apply_free(d, rho);
        else if constexpr (std::is_same_v<T, InteractingDilation>)
          return apply_interacting(d, rho);
        else if constexpr (std::is_same_v<T, HalmosDilation>)
          return apply_halmos(d, rho);
        else
          return apply_power(d, rho, 1);
      },
      dil);
}

ComplexMatrix apply_dilation(const Dilation& dil, const DensityState& rho) {
  return apply_dilation(dil, rho.matrix);
}

Index dilation_dim_in(const Dilation& dil) {
  return std::visit(
      [](const auto& d) -> Index {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PowerDilation>)
          return d.dim_h;
        else
          return d.dim_in;
      },
      dil);
}

Index dilation_dim_out(const Dilation& dil) {
  return std::visit(
      [](const auto& d) -> Index {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PowerDilation>)
          return d.dim_h;
        else
          return d.dim_out;
      },
      dil);
}

}  // namespace qdilate
