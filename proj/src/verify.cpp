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

#include "qdilate/verify.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qdilate {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Prng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Prng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; the +2^-53 keeps the log argument strictly positive.
  const double u1 = uniform() + 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Prng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im);
}

ComplexMatrix random_gaussian_matrix(Index rows, Index cols, Prng& rng) {
  ComplexMatrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

ComplexMatrix random_isometry(Index rows, Index cols, Prng& rng) {
  if (rows < cols)
    throw std::invalid_argument("random_isometry: need at least as many rows as columns");
  const ComplexMatrix g = random_gaussian_matrix(rows, cols, rng);
  ComplexMatrix q(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    ComplexVector w = g.col(c);
    for (int pass = 0; pass < 2; ++pass)
      if (c > 0) w -= q.leftCols(c) * (q.leftCols(c).adjoint() * w).eval();
    const double norm = w.norm();
    if (norm < tol::gram_schmidt_skip)
      throw std::runtime_error("random_isometry: degenerate Gaussian draw");
    q.col(c) = w / norm;
  }
  return q;
}

DensityState random_density(Index dim, Prng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
  ComplexMatrix s = g * g.adjoint();
  s = 0.5 * (s + s.adjoint());
  s /= s.trace().real();
  return DensityState(std::move(s));
}

DensityState random_density(Index dim, std::uint64_t seed) {
  Prng rng(seed);
  return random_density(dim, rng);
}

QuantumOperation random_channel(const ChannelSpec& spec) {
  if (spec.dim_in < 1 || spec.dim_out < 1)
    throw std::invalid_argument("random_channel: dimensions must be positive");
  if (spec.rank < 1 || spec.rank > spec.dim_in * spec.dim_out) {
    std::ostringstream msg;
    msg << "random_channel: rank " << spec.rank << " infeasible for dims " << spec.dim_in
        << " -> " << spec.dim_out;
    throw std::invalid_argument(msg.str());
  }
  if (spec.rank * spec.dim_out < spec.dim_in) {
    std::ostringstream msg;
    msg << "random_channel: rank " << spec.rank << " gives no isometry into C^rank (x) K for dims "
        << spec.dim_in << " -> " << spec.dim_out;
    throw std::invalid_argument(msg.str());
  }

  Prng rng(spec.seed);
  const ComplexMatrix v = random_isometry(spec.rank * spec.dim_out, spec.dim_in, rng);
  const double scale = spec.trace_preserving ? 1.0 : 0.3 + 0.6 * rng.uniform();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(spec.rank));
  for (Index i = 0; i < spec.rank; ++i)
    kraus.push_back(scale * v.block(i * spec.dim_out, 0, spec.dim_out, spec.dim_in));
  return QuantumOperation(std::move(kraus), spec.dim_in, spec.dim_out);
}

QuantumOperation mix_kraus(const QuantumOperation& op, const ComplexMatrix& y) {
  const Index count = static_cast<Index>(op.kraus.size());
  if (y.cols() != count)
    throw std::invalid_argument("mix_kraus: column count must match the Kraus count");
  if (!is_isometry(y))
    throw std::invalid_argument("mix_kraus: mixing matrix must have orthonormal columns");
  std::vector<ComplexMatrix> mixed;
  mixed.reserve(static_cast<std::size_t>(y.rows()));
  for (Index j = 0; j < y.rows(); ++j) {
    ComplexMatrix e = ComplexMatrix::Zero(op.dim_out, op.dim_in);
    for (Index i = 0; i < count; ++i) e += y(j, i) * op.kraus[static_cast<std::size_t>(i)];
    mixed.push_back(std::move(e));
  }
  return QuantumOperation(std::move(mixed), op.dim_in, op.dim_out);
}

double reconstruction_error(const Dilation& dil, const QuantumOperation& op, int trials,
                            std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("reconstruction_error: trials must be positive");
  if (dilation_dim_in(dil) != op.dim_in || dilation_dim_out(dil) != op.dim_out)
    throw std::invalid_argument("reconstruction_error: dimension mismatch");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const DensityState rho =
        random_density(op.dim_in, splitmix64_at(seed, static_cast<std::uint64_t>(t)));
    const double err = (apply_dilation(dil, rho.matrix) - qdilate::apply(op, rho.matrix)).norm();
    worst = std::max(worst, err);
  }
  return worst;
}

bool choi_matrix_is_positive(const ComplexMatrix& choi_matrix) {
  const HermitianEig eig = hermitian_eig(choi_matrix);
  const Index n = eig.eigenvalues.size();
  return n == 0 || eig.eigenvalues[n - 1] >= -tol::psd;
}

bool cp_audit(const QuantumOperation& op) { return choi_matrix_is_positive(choi(op).matrix); }

}  // namespace qdilate
