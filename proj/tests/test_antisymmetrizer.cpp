/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qregsim/antisymmetrizer.hpp"

#include "qregsim/experiments.hpp"
#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qregsim;
using Catch::Approx;

namespace {

const MemoryLayout kLayout = demo_layout();
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::uint64_t mem_index(std::uint64_t reg2, std::uint64_t reg1) {
  std::uint64_t i = kLayout.with_register_value(0, 2, reg2);
  return kLayout.with_register_value(i, 1, reg1);
}

const std::uint64_t kP0 = kLayout.make_register_value(true, 0, 1);
const std::uint64_t kP1 = kLayout.make_register_value(true, 0, 2);

}  // namespace

TEST_CASE("comparator truth table over all basis states") {
  const std::uint64_t nreg = std::uint64_t{1} << kLayout.bits_per_register();
  for (std::uint64_t v2 = 0; v2 < nreg; ++v2)
    for (std::uint64_t v1 = 0; v1 < nreg; ++v1) {
      const std::uint64_t code = ordering_code(kLayout, mem_index(v2, v1));
      const bool both = kLayout.occupied(v2) && kLayout.occupied(v1);
      if (!both || v1 == v2) CHECK(code == 0);
      else if (v2 > v1) CHECK(code == 2);
      else CHECK(code == 1);
    }
}

TEST_CASE("pipeline reproduces phi_0 -> phi_1 -> phi_2 -> phi_3") {
  const StateVector phi0 = demo_phi0();

  const StateVector phi1 = mark_largest(phi0);
  // branch |Omega>|1p0>: aux 00; branch |1p1>|1p0>: aux 10
  CHECK(std::abs(phi1.amplitude(kLayout.with_aux_value(mem_index(0, kP0), 0)) -
                 cplx(kInvSqrt2)) < 1e-14);
  CHECK(std::abs(phi1.amplitude(kLayout.with_aux_value(mem_index(kP1, kP0), 2)) -
                 cplx(kInvSqrt2)) < 1e-14);

  const StateVector mid = antisymmetrize_aux(phi1);
  CHECK(std::abs(mid.amplitude(kLayout.with_aux_value(mem_index(kP1, kP0), 2)) -
                 cplx(0.5)) < 1e-14);
  CHECK(std::abs(mid.amplitude(kLayout.with_aux_value(mem_index(kP1, kP0), 1)) -
                 cplx(-0.5)) < 1e-14);

  const StateVector phi2 = conditional_swap_phase(mid);
  CHECK(std::abs(phi2.amplitude(kLayout.with_aux_value(mem_index(0, kP0), 0)) -
                 cplx(kInvSqrt2)) < 1e-14);
  CHECK(std::abs(phi2.amplitude(kLayout.with_aux_value(mem_index(kP1, kP0), 2)) -
                 cplx(0.5)) < 1e-14);
  CHECK(std::abs(phi2.amplitude(kLayout.with_aux_value(mem_index(kP0, kP1), 1)) -
                 cplx(-0.5)) < 1e-14);

  const StateVector phi3 = locate_largest_uncompute(phi2);
  CHECK(std::abs(phi3.amplitude(kLayout.with_aux_value(mem_index(0, kP0), 0)) -
                 cplx(kInvSqrt2)) < 1e-14);
  CHECK(std::abs(phi3.amplitude(kLayout.with_aux_value(mem_index(kP1, kP0), 0)) -
                 cplx(0.5)) < 1e-14);
  CHECK(std::abs(phi3.amplitude(kLayout.with_aux_value(mem_index(kP0, kP1), 0)) -
                 cplx(-0.5)) < 1e-14);
  CHECK(phi3.norm() == Approx(1.0).margin(1e-10));
}

TEST_CASE("aux marginal before the uncompute stage") {
  const StateVector phi2 =
      conditional_swap_phase(antisymmetrize_aux(mark_largest(demo_phi0())));
  const auto h = phi2.marginal({kLayout.aux_qubit(0), kLayout.aux_qubit(1)});
  CHECK(h.probability("00") == Approx(0.5).margin(1e-12));
  CHECK(h.probability("10") == Approx(0.25).margin(1e-12));
  CHECK(h.probability("01") == Approx(0.25).margin(1e-12));
}

TEST_CASE("aux register disentangles to |00> after the pipeline") {
  const StateVector phi3 = antisymmetrize(demo_phi0());
  const Eigen::MatrixXcd rho =
      phi3.reduced_density({kLayout.aux_qubit(0), kLayout.aux_qubit(1)});
  CHECK(std::abs(rho(0, 0) - cplx(1.0)) < 1e-10);       // fidelity with |00>
  CHECK(std::abs((rho * rho).trace() - cplx(1.0)) < 1e-10);  // purity
}

TEST_CASE("post-state antisymmetry of the occupied branch") {
  const StateVector phi3 = antisymmetrize(demo_phi0());
  const std::uint64_t nreg = std::uint64_t{1} << kLayout.bits_per_register();
  for (std::uint64_t x = 0; x < nreg; ++x)
    for (std::uint64_t y = 0; y < nreg; ++y) {
      if (!kLayout.occupied(x) || !kLayout.occupied(y) || x == y) continue;
      const cplx a = phi3.amplitude(mem_index(x, y));
      const cplx b = phi3.amplitude(mem_index(y, x));
      CHECK(std::abs(a + b) < 1e-10);
    }
}

TEST_CASE("inputs with fewer than two particles pass through unchanged") {
  StateVector s(kLayout);
  s.set_amplitude(mem_index(0, kP0), cplx(1.0));
  const StateVector out = antisymmetrize(s);
  CHECK(std::abs(out.amplitude(mem_index(0, kP0)) - cplx(1.0)) < 1e-14);
  const StateVector vac = antisymmetrize(init_vacuum(kLayout));
  CHECK(std::abs(vac.amplitude(0) - cplx(1.0)) == 0.0);
}

TEST_CASE("every stage is unitary on the full space") {
  const auto stages = {
      std::function<StateVector(const StateVector&)>(mark_largest),
      std::function<StateVector(const StateVector&)>(antisymmetrize_aux),
      std::function<StateVector(const StateVector&)>(conditional_swap_phase),
      std::function<StateVector(const StateVector&)>(locate_largest_uncompute)};
  for (const auto& stage : stages) {
    const Eigen::MatrixXcd u = test::dense_embedded(kLayout, stage);
    CHECK((u.adjoint() * u -
           Eigen::MatrixXcd::Identity(u.rows(), u.rows()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("aux antisymmetrization against the explicit 2x2 rotation") {
  // On a branch whose memory marks register 2 as larger, the map on the
  // {|10>,|01>} span is the rotation [[1,1],[-1,1]]/sqrt2 (columns are the
  // images of |10> and |01>). Applying the stage twice must equal applying
  // the squared rotation.
  Eigen::Matrix2cd r;
  r << cplx(kInvSqrt2), cplx(kInvSqrt2), cplx(-kInvSqrt2), cplx(kInvSqrt2);
  const Eigen::Matrix2cd r2 = r * r;

  const std::uint64_t mem = mem_index(kP1, kP0);  // register 2 larger
  StateVector in(kLayout);
  in.set_amplitude(kLayout.with_aux_value(mem, 2), cplx(0.8));
  in.set_amplitude(kLayout.with_aux_value(mem, 1), cplx(0.6));
  const StateVector once = antisymmetrize_aux(in);
  const StateVector twice = antisymmetrize_aux(once);

  const Eigen::Vector2cd v0(cplx(0.8), cplx(0.6));
  const Eigen::Vector2cd expect_once = r * v0;
  const Eigen::Vector2cd expect_twice = r2 * v0;
  CHECK(std::abs(once.amplitude(kLayout.with_aux_value(mem, 2)) -
                 expect_once(0)) < 1e-14);
  CHECK(std::abs(once.amplitude(kLayout.with_aux_value(mem, 1)) -
                 expect_once(1)) < 1e-14);
  CHECK(std::abs(twice.amplitude(kLayout.with_aux_value(mem, 2)) -
                 expect_twice(0)) < 1e-14);
  CHECK(std::abs(twice.amplitude(kLayout.with_aux_value(mem, 1)) -
                 expect_twice(1)) < 1e-14);
  // aux |00> branches are untouched
  StateVector still(kLayout);
  still.set_amplitude(kLayout.with_aux_value(mem, 0), cplx(1.0));
  CHECK(std::abs(antisymmetrize_aux(still).amplitude(
                     kLayout.with_aux_value(mem, 0)) -
                 cplx(1.0)) < 1e-14);
}

TEST_CASE("conditional swap-phase squares to the identity") {
  const Eigen::MatrixXcd u = test::dense_embedded(
      kLayout, std::function<StateVector(const StateVector&)>(
                   conditional_swap_phase));
  CHECK(((u * u) - Eigen::MatrixXcd::Identity(u.rows(), u.rows()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("equal-key branches keep cleared aux and are left alone") {
  // Unreachable for fermions (creation is nilpotent); the unitary pipeline
  // passes them through.
  StateVector s(kLayout);
  s.set_amplitude(mem_index(kP0, kP0), cplx(1.0));
  const StateVector out = antisymmetrize(s);
  CHECK(std::abs(out.amplitude(mem_index(kP0, kP0)) - cplx(1.0)) < 1e-14);
}

TEST_CASE("swapping occupied branch contents negates the phi_3 amplitude") {
  const StateVector phi3 = antisymmetrize(demo_phi0());
  const cplx a = phi3.amplitude(mem_index(kP1, kP0));
  const cplx b = phi3.amplitude(mem_index(kP0, kP1));
  CHECK(std::abs(a + b) < 1e-14);
  CHECK(std::abs(a) == Approx(0.5).margin(1e-12));
}
