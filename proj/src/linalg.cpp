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

#include "qdilate/linalg.hpp"

#include <cmath>
#include <vector>

namespace qdilate {

namespace {

// Rotates the first entry with magnitude above the gauge threshold to be real
// positive. A unit vector always has one.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > tol::phase_gauge) {
      v *= std::conj(v[i]) / mag;
      return;
    }
  }
}

// Orthonormalizes candidate columns against the fixed columns and against the
// survivors collected so far, two projection passes per candidate. Candidates
// whose residual drops below the skip threshold are discarded. Collection
// stops once `want` survivors are found.
ComplexMatrix gram_schmidt_survivors(const ComplexMatrix& fixed, const ComplexMatrix& candidates,
                                     Index want) {
  ComplexMatrix kept(candidates.rows(), want);
  Index found = 0;
  for (Index c = 0; c < candidates.cols() && found < want; ++c) {
    ComplexVector w = candidates.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      if (fixed.cols() > 0) w -= fixed * (fixed.adjoint() * w).eval();
      if (found > 0)
        w -= kept.leftCols(found) * (kept.leftCols(found).adjoint() * w).eval();
    }
    const double norm = w.norm();
    if (norm < tol::gram_schmidt_skip) continue;
    kept.col(found++) = w / norm;
  }
  return kept.leftCols(found);
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: matrix must be square");
  if (!h.allFinite()) throw std::invalid_argument("hermitian_eig: matrix has non-finite entries");
  if ((h - h.adjoint()).norm() > tol::hermitian)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");

  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");

  const Index n = h.rows();
  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // The backend returns ascending order; flip to non-increasing.
  for (Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }

  // Rebuild each cluster from its eigenspace projector so the returned basis
  // depends on the subspace only, not on whatever basis the solver picked.
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && out.eigenvalues[stop - 1] - out.eigenvalues[stop] < tol::eig_cluster_gap)
      ++stop;
    const Index size = stop - start;
    const auto block = out.eigenvectors.middleCols(start, size);
    const ComplexMatrix projector = block * block.adjoint();
    const ComplexMatrix basis = gram_schmidt_survivors(ComplexMatrix(n, 0), projector, size);
    if (basis.cols() != size)
      throw std::runtime_error("hermitian_eig: cluster basis reconstruction fell short");
    out.eigenvectors.middleCols(start, size) = basis;
    start = stop;
  }
  for (Index i = 0; i < n; ++i) fix_phase(out.eigenvectors.col(i));
  return out;
}

Index rank_from_eigenvalues(const RealVector& eigenvalues) {
  if (eigenvalues.size() == 0) return 0;
  const double lead = eigenvalues[0];
  if (!(lead > tol::rank_floor_abs)) return 0;
  const double cutoff = std::max(lead * tol::rank_cutoff_rel, tol::rank_floor_abs);
  Index rank = 0;
  for (Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] >= cutoff) ++rank;
  return rank;
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& t) {
  if (t.rows() < t.cols())
    throw std::invalid_argument("complete_to_unitary: more columns than rows");
  if (!t.allFinite())
    throw std::invalid_argument("complete_to_unitary: matrix has non-finite entries");
  const ComplexMatrix gram = t.adjoint() * t;
  if ((gram - ComplexMatrix::Identity(t.cols(), t.cols())).norm() > tol::orthonormal)
    throw std::invalid_argument("complete_to_unitary: columns are not orthonormal");
  if (t.rows() == t.cols()) return t;

  const ComplexMatrix extra =
      gram_schmidt_survivors(t, ComplexMatrix::Identity(t.rows(), t.rows()), t.rows() - t.cols());
  if (extra.cols() != t.rows() - t.cols())
    throw std::runtime_error("complete_to_unitary: basis completion fell short");
  ComplexMatrix u(t.rows(), t.rows());
  u.leftCols(t.cols()) = t;
  u.rightCols(extra.cols()) = extra;
  return u;
}

ComplexMatrix cyclic_ancilla_permutation(int n, Index dim_r, Index dim_h) {
  if (n < 1) throw std::invalid_argument("cyclic_ancilla_permutation: n must be at least 1");
  if (dim_r < 1 || dim_h < 1)
    throw std::invalid_argument("cyclic_ancilla_permutation: dimensions must be positive");
  Index dim_rn = 1;
  for (int i = 0; i < n; ++i) dim_rn = composite_dimension(dim_rn, dim_r);
  const Index side = composite_dimension(dim_rn, dim_h);

  // Image of each ancilla basis index under the swap chain. Digits are base
  // dim_r, most significant digit belonging to factor 1.
  std::vector<Index> image(static_cast<std::size_t>(dim_rn));
  std::vector<Index> digit(static_cast<std::size_t>(n));
  for (Index idx = 0; idx < dim_rn; ++idx) {
    Index rest = idx;
    for (int f = n - 1; f >= 0; --f) {
      digit[static_cast<std::size_t>(f)] = rest % dim_r;
      rest /= dim_r;
    }
    for (int i = n - 1; i >= 1; --i) std::swap(digit[static_cast<std::size_t>(i - 1)],
                                               digit[static_cast<std::size_t>(n - 1)]);
    Index mapped = 0;
    for (int f = 0; f < n; ++f) mapped = mapped * dim_r + digit[static_cast<std::size_t>(f)];
    image[static_cast<std::size_t>(idx)] = mapped;
  }

  ComplexMatrix p = ComplexMatrix::Zero(side, side);
  for (Index idx = 0; idx < dim_rn; ++idx)
    for (Index h = 0; h < dim_h; ++h)
      p(image[static_cast<std::size_t>(idx)] * dim_h + h, idx * dim_h + h) = 1.0;
  return p;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tolerance;
}

bool is_isometry(const ComplexMatrix& m, double tolerance) {
  if (m.rows() < m.cols()) return false;
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.cols(), m.cols())).norm() <= tolerance;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
  return m.rows() == m.cols() && is_isometry(m, tolerance);
}

}  // namespace qdilate
