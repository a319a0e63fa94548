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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>

#include "qdilate/verify.hpp"
#include "test_support.hpp"

using namespace qdilate;
using qtest::amplitude_damping;
using qtest::bitwise_equal;
using qtest::dephasing;
using qtest::diff;

TEST_CASE("sub-seed derivation is stable and spread out") {
  CHECK(splitmix64_at(42, 0) == splitmix64_at(42, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 64; ++i) seen.insert(splitmix64_at(42, i));
  for (std::uint64_t i = 0; i < 64; ++i) seen.insert(splitmix64_at(43, i));
  CHECK(seen.size() == 128);
}

TEST_CASE("the random source repeats its stream exactly") {
  Prng a(7);
  Prng b(7);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  Prng c(8);
  CHECK(Prng(7).uniform() != c.uniform());
}

TEST_CASE("gaussian variates have the right first two moments") {
  Prng prng(11);
  const int samples = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double g = prng.gaussian();
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / samples;
  const double var = sum_sq / samples - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("random isometries have orthonormal columns") {
  Prng prng(3);
  const ComplexMatrix v = random_isometry(5, 3, prng);
  CHECK(diff(v.adjoint() * v, ComplexMatrix::Identity(3, 3)) <= 1e-13);
  Prng again(3);
  CHECK(bitwise_equal(v, random_isometry(5, 3, again)));
  Prng other(4);
  CHECK_FALSE(bitwise_equal(v, random_isometry(5, 3, other)));
  Prng narrow(5);
  CHECK_THROWS_AS(random_isometry(2, 3, narrow), std::invalid_argument);
}

TEST_CASE("random states are valid and reproducible") {
  const DensityState rho = random_density(3, 17);
  CHECK(rho.dim == 3);
  CHECK(is_hermitian(rho.matrix, 1e-13));
  CHECK(std::abs(rho.matrix.trace().real() - 1.0) <= 1e-13);
  const RealVector spectrum = hermitian_eig(rho.matrix).eigenvalues;
  CHECK(spectrum.minCoeff() > 0.0);
  CHECK(bitwise_equal(rho.matrix, random_density(3, 17).matrix));
  CHECK_FALSE(bitwise_equal(rho.matrix, random_density(3, 18).matrix));
}

TEST_CASE("generated operations honor their spec") {
  ChannelSpec spec;
  spec.dim_in = 3;
  spec.dim_out = 2;
  spec.rank = 3;
  spec.trace_preserving = true;
  spec.seed = 5;
  const QuantumOperation tp = random_channel(spec);
  CHECK(tp.dim_in == 3);
  CHECK(tp.dim_out == 2);
  CHECK(tp.kraus.size() == 3);
  CHECK(is_trace_preserving(tp));
  CHECK(choi_rank(tp) == 3);
  CHECK(cp_audit(tp));
  const QuantumOperation same = random_channel(spec);
  for (std::size_t i = 0; i < tp.kraus.size(); ++i)
    CHECK(bitwise_equal(tp.kraus[i], same.kraus[i]));

  spec.trace_preserving = false;
  const QuantumOperation sub = random_channel(spec);
  CHECK_FALSE(is_trace_preserving(sub));
  CHECK(choi_rank(sub) == 3);
  const ComplexMatrix k = effect_operator(sub);
  const double scale = k(0, 0).real();
  CHECK(scale >= 0.09 - 1e-12);
  CHECK(scale <= 0.81 + 1e-12);
  CHECK(diff(k, scale * ComplexMatrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("infeasible channel specs are rejected") {
  ChannelSpec spec;
  spec.dim_in = 3;
  spec.dim_out = 1;
  spec.rank = 2;
  spec.seed = 1;
  CHECK_THROWS_AS(random_channel(spec), std::invalid_argument);  // 2 * 1 < 3
  spec.dim_out = 2;
  spec.rank = 7;
  CHECK_THROWS_AS(random_channel(spec), std::invalid_argument);  // 7 > 3 * 2
  spec.rank = 0;
  CHECK_THROWS_AS(random_channel(spec), std::invalid_argument);
  spec.rank = 2;
  CHECK_NOTHROW(random_channel(spec));
}

TEST_CASE("mixing the Kraus list preserves the map") {
  const QuantumOperation op = amplitude_damping(0.3);
  const double inv = 1.0 / std::sqrt(2.0);
  ComplexMatrix rotation(2, 2);
  rotation << inv, inv, -inv, inv;
  const QuantumOperation rotated = mix_kraus(op, rotation);
  CHECK(rotated.kraus.size() == 2);
  CHECK(diff(choi(rotated).matrix, choi(op).matrix) <= 1e-14);

  Prng prng(23);
  const ComplexMatrix tall = random_isometry(4, 2, prng);
  const QuantumOperation widened = mix_kraus(op, tall);
  CHECK(widened.kraus.size() == 4);
  CHECK(diff(choi(widened).matrix, choi(op).matrix) <= 1e-13);

  ComplexMatrix skewed(2, 2);
  skewed << 1, 1, 0, 1;
  CHECK_THROWS_AS(mix_kraus(op, skewed), std::invalid_argument);
  CHECK_THROWS_AS(mix_kraus(op, ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("reconstruction error measures worst-case deviation") {
  const QuantumOperation op = dephasing(0.4);
  const Dilation dil(interacting_dilation(op));
  const double err = reconstruction_error(dil, op, 20, 99);
  CHECK(err <= 1e-12);
  CHECK(err == reconstruction_error(dil, op, 20, 99));

  const QuantumOperation other = dephasing(0.9);
  CHECK(reconstruction_error(dil, other, 20, 99) > 1e-6);

  CHECK_THROWS_AS(reconstruction_error(dil, op, 0, 99), std::invalid_argument);
  const QuantumOperation three = random_channel({3, 3, 2, true, 12});
  CHECK_THROWS_AS(reconstruction_error(dil, three, 20, 99), std::invalid_argument);
}

TEST_CASE("positivity audits catch indefinite matrices") {
  ComplexMatrix flip(2, 2);
  flip << 1, 0, 0, -1;
  CHECK_FALSE(choi_matrix_is_positive(flip));
  CHECK(choi_matrix_is_positive(ComplexMatrix::Identity(4, 4)));
  CHECK(cp_audit(amplitude_damping(0.7)));
}
