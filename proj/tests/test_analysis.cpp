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

#include "qdilate/analysis.hpp"
#include "qdilate/verify.hpp"
#include "test_support.hpp"

using namespace qdilate;
using qtest::amplitude_damping;
using qtest::dephasing;
using qtest::identity_channel;
using qtest::projector_branch;

namespace {

RealVector vec(std::initializer_list<double> values) {
  RealVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

QuantumOperation seeded(Index dim_in, Index dim_out, Index rank, bool tp, std::uint64_t seed) {
  ChannelSpec spec;
  spec.dim_in = dim_in;
  spec.dim_out = dim_out;
  spec.rank = rank;
  spec.trace_preserving = tp;
  spec.seed = seed;
  return random_channel(spec);
}

}  // namespace

TEST_CASE("majorization compares sorted prefix sums") {
  CHECK(is_majorized_by(vec({0.4, 0.35, 0.25}), vec({0.5, 0.3, 0.2})));
  CHECK_FALSE(is_majorized_by(vec({0.5, 0.3, 0.2}), vec({0.4, 0.35, 0.25})));
  // Unsorted input is sorted first.
  CHECK(is_majorized_by(vec({0.25, 0.4, 0.35}), vec({0.2, 0.5, 0.3})));
  // Shorter vectors are zero padded.
  CHECK(is_majorized_by(vec({0.5, 0.5}), vec({1.0})));
  CHECK_FALSE(is_majorized_by(vec({1.0}), vec({0.5, 0.5})));
  // Totals must agree.
  CHECK_FALSE(is_majorized_by(vec({0.5}), vec({1.0})));
  CHECK(is_majorized_by(vec({1.0}), vec({1.0})));
  CHECK_THROWS_AS(is_majorized_by(vec({-0.1, 1.1}), vec({1.0})), std::invalid_argument);
  CHECK_THROWS_AS(is_majorized_by(vec({1.0}), vec({-0.1, 1.1})), std::invalid_argument);
}

TEST_CASE("ancilla accounting for the operation alone") {
  const BoundsReport ad = ancilla_lower_bound(amplitude_damping(0.5));
  CHECK(ad.c == 2);
  CHECK(ad.rank_defect == 0);
  CHECK(ad.lower_bound_dim_l == 2);
  CHECK_FALSE(ad.actual_dim_l.has_value());
  CHECK_FALSE(ad.sigma_rank.has_value());
  CHECK(ad.satisfied);

  const BoundsReport branch = ancilla_lower_bound(projector_branch());
  CHECK(branch.c == 1);
  CHECK(branch.rank_defect == 1);
  CHECK(branch.lower_bound_dim_l == 2);

  const BoundsReport ident = ancilla_lower_bound(identity_channel());
  CHECK(ident.c == 1);
  CHECK(ident.lower_bound_dim_l == 1);

  const BoundsReport zero = ancilla_lower_bound(QuantumOperation({}, 2, 2));
  CHECK(zero.c == 0);
  CHECK(zero.rank_defect == 2);
  CHECK(zero.lower_bound_dim_l == 1);
}

TEST_CASE("bounds audit flags an undersized ancilla") {
  IsometricDilation cramped;
  cramped.v = stinespring_contraction(projector_branch(), 1);
  cramped.sigma = ComplexMatrix::Identity(1, 1);
  cramped.sigma_basis = ComplexMatrix::Identity(1, 1);
  cramped.dim_l = 1;
  cramped.dim_in = 2;
  cramped.dim_out = 2;
  const BoundsReport report = check_bounds(cramped, projector_branch());
  CHECK(report.lower_bound_dim_l == 2);
  REQUIRE(report.actual_dim_l.has_value());
  CHECK(*report.actual_dim_l == 1);
  CHECK_FALSE(report.satisfied);
}

TEST_CASE("built dilations satisfy their own bounds") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const bool tp = seed % 2 == 0;
    const QuantumOperation op = seeded(2, 2, 1 + seed % 3, tp, seed);
    const BoundsReport lone = ancilla_lower_bound(op);

    const IsometricDilation iso = isometric_dilation(op);
    const BoundsReport bi = check_bounds(iso, op);
    CHECK(bi.satisfied);
    CHECK(*bi.actual_dim_l == lone.lower_bound_dim_l);
    CHECK(*bi.sigma_rank == bi.c);

    CHECK(check_bounds(free_dilation(op), op).satisfied);
    CHECK(check_bounds(interacting_dilation(op), op).satisfied);
    CHECK(check_bounds(halmos_dilation(op), op).satisfied);
    CHECK(check_bounds(Dilation(free_dilation(op)), op).satisfied);

    if (tp) {
      const PowerDilation pd = power_dilation(op, 2);
      const BoundsReport bp = check_bounds(pd, op);
      CHECK(bp.satisfied);
      CHECK(*bp.actual_dim_l == pd.dim_r);
    }
  }
}

TEST_CASE("canonical builds report their own weights") {
  const QuantumOperation op = amplitude_damping(0.5);
  const InteractingDilation dil = interacting_dilation(op);
  const RealVector weights = dilation_majorization_vector(dil);
  REQUIRE(weights.size() == 2);
  CHECK(weights(0) == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(weights(1) == doctest::Approx(0.5).epsilon(1e-9));

  const MajorizationReport report = check_majorization_constraint(dil, op);
  CHECK(report.majorized);
  REQUIRE(report.candidate.size() == report.canonical.size());
  for (Index i = 0; i < report.candidate.size(); ++i) {
    CHECK(std::abs(report.candidate(i) - report.canonical(i)) <= 1e-9);
  }
  CHECK(report.partial_sums.size() == static_cast<std::size_t>(report.candidate.size()));
}

TEST_CASE("stored decompositions sit below the canonical weights") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const QuantumOperation op = seeded(2, 2, 2, seed % 2 == 0, seed);
    Prng prng(seed + 500);
    const Index extra = 1 + static_cast<Index>(seed % 3);
    const ComplexMatrix y = random_isometry(2 + extra, 2, prng);
    const QuantumOperation mixed = mix_kraus(canonical_kraus(op), y);
    const InteractingDilation dil = interacting_dilation(mixed, KrausForm::as_given);
    const MajorizationReport report = check_majorization_constraint(dil, op);
    CHECK(report.majorized);
    CHECK(report.candidate.size() >= report.canonical.size());
  }
}

TEST_CASE("the majorization check rejects impostors") {
  const InteractingDilation dil = interacting_dilation(dephasing(0.5));
  CHECK_THROWS_AS(check_majorization_constraint(dil, dephasing(0.9)), std::runtime_error);
  const QuantumOperation three = seeded(3, 3, 2, true, 7);
  CHECK_THROWS_AS(check_majorization_constraint(dil, three), std::invalid_argument);
}
