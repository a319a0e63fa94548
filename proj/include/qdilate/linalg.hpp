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

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <type_traits>

namespace qdilate {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Hard cap on any matrix side produced by the growth operations below. Past
// this point the instance is no longer desk scale and dense algebra is the
// wrong tool.
inline constexpr Index max_dimension = 4096;

namespace tol {

// Frobenius residual accepted when checking Hermiticity and orthonormality.
inline constexpr double hermitian = 1e-9;
inline constexpr double orthonormal = 1e-9;

// ||sum E^dag E - I||_F threshold for calling a map trace preserving.
inline constexpr double trace_preserving = 1e-9;

// Slack on the smallest eigenvalue when checking positive semidefiniteness.
inline constexpr double psd = 1e-9;

// Consecutive eigenvalues closer than this form one degenerate cluster.
inline constexpr double eig_cluster_gap = 1e-9;

// Gram-Schmidt candidates whose residual falls below this are dropped.
inline constexpr double gram_schmidt_skip = 1e-9;

// Entries below this are skipped when fixing an overall phase.
inline constexpr double phase_gauge = 1e-9;

// Numerical rank: eigenvalues below rank_cutoff_rel * lambda_max count as
// zero, with an absolute floor for matrices that are zero up to roundoff.
inline constexpr double rank_cutoff_rel = 1e-10;
inline constexpr double rank_floor_abs = 1e-12;

// Prefix-sum slack in majorization comparisons.
inline constexpr double majorization = 1e-9;

}  // namespace tol

// Composite indices are first-factor major throughout: the basis pair (a, b)
// of A (x) B sits at index a * dim_b + b.

inline Index composite_dimension(Index a, Index b) {
  if (a < 0 || b < 0) throw std::invalid_argument("dimensions must be non-negative");
  if (a != 0 && b > max_dimension / a)
    throw std::length_error("composite dimension exceeds the supported maximum");
  return a * b;
}

// Kronecker product: out(i*rb + k, j*cb + l) = a(i, j) * b(k, l).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  static_assert(std::is_same_v<typename DerivedA::Scalar, typename DerivedB::Scalar>,
                "kron factors must share one scalar type");
  const Index rows = composite_dimension(a.rows(), b.rows());
  const Index cols = composite_dimension(a.cols(), b.cols());
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
  return out;
}

namespace detail {
template <typename Derived>
void check_bipartite(const Eigen::MatrixBase<Derived>& m, Index dim_a, Index dim_b) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("factor dimensions must be positive");
  if (m.rows() != m.cols() || m.rows() != dim_a * dim_b)
    throw std::invalid_argument("matrix side does not match dim_a * dim_b");
}
}  // namespace detail

// Trace over the first factor of A (x) B: out(k, l) = sum_a m(a*db + k, a*db + l).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace_first(
    const Eigen::MatrixBase<Derived>& m, Index dim_a, Index dim_b) {
  detail::check_bipartite(m, dim_a, dim_b);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim_b, dim_b);
  for (Index a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

// Trace over the second factor of A (x) B: out(i, j) = sum_b m(i*db + b, j*db + b).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace_second(
    const Eigen::MatrixBase<Derived>& m, Index dim_a, Index dim_b) {
  detail::check_bipartite(m, dim_a, dim_b);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(dim_a, dim_a);
  for (Index i = 0; i < dim_a; ++i)
    for (Index j = 0; j < dim_a; ++j) {
      typename Derived::Scalar sum{};
      for (Index b = 0; b < dim_b; ++b) sum += m(i * dim_b + b, j * dim_b + b);
      out(i, j) = sum;
    }
  return out;
}

struct HermitianEig {
  RealVector eigenvalues;      // sorted non-increasing
  ComplexMatrix eigenvectors;  // orthonormal columns, aligned with eigenvalues
};

// Eigendecomposition of a Hermitian matrix with a deterministic basis choice.
// Within each near-degenerate cluster the basis is rebuilt by projecting the
// canonical basis vectors onto the cluster eigenspace and orthonormalizing in
// index order; afterwards every vector's first significant entry is rotated to
// be real positive. Identical input bits give identical output bits, whatever
// the backend solver chose internally.
HermitianEig hermitian_eig(const ComplexMatrix& h);

// Count of eigenvalues treated as nonzero under the rank cutoff. Expects the
// sorted non-increasing vector produced by hermitian_eig.
Index rank_from_eigenvalues(const RealVector& eigenvalues);

// Extends a matrix with orthonormal columns to a square unitary [t | w]. The
// appended columns are the Gram-Schmidt survivors of the canonical basis
// vectors taken in index order, so the completion is deterministic.
ComplexMatrix complete_to_unitary(const ComplexMatrix& t);

// Permutation on R^{(x)n} (x) H that rotates the n ancilla factors one slot to
// the left and leaves H alone. Built as the pair-swap product
// (1 n)(2 n)...(n-1 n) applied rightmost first, which is what makes repeated
// use feed a fresh ancilla into slot n each round.
ComplexMatrix cyclic_ancilla_permutation(int n, Index dim_r, Index dim_h);

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermitian);
bool is_isometry(const ComplexMatrix& m, double tolerance = tol::orthonormal);
bool is_unitary(const ComplexMatrix& m, double tolerance = tol::orthonormal);

}  // namespace qdilate
