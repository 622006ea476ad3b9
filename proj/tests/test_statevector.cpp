/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qregsim/statevector.hpp"

#include "qregsim/antisymmetrizer.hpp"
#include "qregsim/experiments.hpp"
#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qregsim;
using Catch::Approx;

namespace {
MemoryLayout small_layout() {
  MemoryLayout l;
  l.n_registers = 2;
  l.spin_bits = 0;
  l.momentum_bits = 2;
  l.aux_bits = 2;
  return l;
}
}  // namespace

TEST_CASE("vacuum state") {
  const auto l = small_layout();
  const StateVector v = init_vacuum(l);
  CHECK(std::abs(v.amplitude(0) - cplx(1.0)) == 0.0);
  CHECK(v.norm() == Approx(1.0));
  for (int q = 0; q < l.total_qubits(); ++q)
    CHECK(v.probability_of({q}, 0) == Approx(1.0));
}

TEST_CASE("apply embeds and controls") {
  const auto l = small_layout();
  StateVector v = init_vacuum(l);

  SECTION("identity leaves the state alone") {
    v.apply(MemoryOperator::identity({0, 3}));
    CHECK(std::abs(v.amplitude(0) - cplx(1.0)) == 0.0);
  }

  SECTION("X on qubit 0 maps vacuum to basis index 1") {
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    v.apply(MemoryOperator::from_dense({0}, x));
    CHECK(std::abs(v.amplitude(1) - cplx(1.0)) == 0.0);
  }

  SECTION("a failed control acts as the identity") {
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    // momentum flip controlled on the presence qubit of register 1
    v.apply(MemoryOperator::from_dense({0}, x), {{l.presence_qubit(1), 1}});
    CHECK(std::abs(v.amplitude(0) - cplx(1.0)) == 0.0);
  }

  SECTION("controls must not overlap acted qubits") {
    CHECK_THROWS_AS(v.apply(MemoryOperator::identity({0}), {{0, 1}}),
                    std::invalid_argument);
  }

  SECTION("embedded application agrees with the dense oracle") {
    const Eigen::MatrixXcd u = test::random_unitary(8, 17);
    StateVector s = test::random_state(l, 4);
    StateVector s2 = s;
    s.apply(MemoryOperator::from_dense({1, 4, 6}, u), {{3, 1}});
    const Eigen::MatrixXcd full = test::dense_embedded(l, [&](const StateVector& b) {
      StateVector out = b;
      out.apply(MemoryOperator::from_dense({1, 4, 6}, u), {{3, 1}});
      return out;
    });
    CHECK((full * s2.amplitudes() - s.amplitudes()).norm() < 1e-12);
    CHECK((full.adjoint() * full - Eigen::MatrixXcd::Identity(full.rows(), full.rows()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("norm preservation under random embedded unitaries") {
  const auto l = small_layout();
  StateVector s = test::random_state(l, 9);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Eigen::MatrixXcd u = test::random_unitary(4, 100 + k);
    const int a = static_cast<int>(k % 7);
    const int b = a + 1;
    s.apply(MemoryOperator::from_dense({a, b}, u));
    CHECK(s.norm() == Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("marginals") {
  const auto l = small_layout();

  SECTION("vacuum marginal is the all-zeros outcome") {
    const auto h = init_vacuum(l).marginal({0, 1, 2});
    REQUIRE(h.entries.size() == 1);
    CHECK(h.probability("000") == Approx(1.0));
  }

  SECTION("register-2 momentum marginal of phi3") {
    const StateVector phi3 = antisymmetrize(demo_phi0());
    const auto h = phi3.marginal({l.momentum_qubit(2, 0), l.momentum_qubit(2, 1)});
    CHECK(h.probability("00") == Approx(0.5).margin(1e-12));   // None
    CHECK(h.probability("01") == Approx(0.25).margin(1e-12));  // p0
    CHECK(h.probability("10") == Approx(0.25).margin(1e-12));  // p1
  }

  SECTION("duplicate qubit indices are rejected") {
    CHECK_THROWS_AS(init_vacuum(l).marginal({0, 0}), std::invalid_argument);
  }
}

TEST_CASE("sampling") {
  const auto l = small_layout();
  const StateVector phi3 = antisymmetrize(demo_phi0());
  const std::vector<int> q{l.momentum_qubit(2, 0), l.momentum_qubit(2, 1)};

  SECTION("determinism: same seed, same histogram") {
    const auto h1 = phi3.sample(q, 5000, 42);
    const auto h2 = phi3.sample(q, 5000, 42);
    CHECK(h1.entries == h2.entries);
  }

  SECTION("counts within 3-sigma binomial bands at 5000 shots") {
    const auto h = phi3.sample(q, 5000, 2024);
    const auto band = [](double p, double shots) {
      return 3.0 * std::sqrt(shots * p * (1.0 - p));
    };
    CHECK(std::abs(h.entries.at("00") - 2500.0) < band(0.5, 5000));
    CHECK(std::abs(h.entries.at("01") - 1250.0) < band(0.25, 5000));
    CHECK(std::abs(h.entries.at("10") - 1250.0) < band(0.25, 5000));
  }

  SECTION("a basis state samples to a single outcome") {
    const auto h = init_vacuum(l).sample({0, 1}, 1000, 7);
    REQUIRE(h.entries.size() == 1);
    CHECK(h.entries.at("00") == 1000.0);
  }

  SECTION("zero shots is an error") {
    CHECK_THROWS_AS(init_vacuum(l).sample({0}, 0, 1), std::invalid_argument);
  }

  SECTION("total-variation distance shrinks with more shots") {
    auto tv = [&](const Histogram& h, long long shots) {
      const auto exact = phi3.marginal(q);
      double d = 0.0;
      for (const auto& [k, p] : exact.entries)
        d += std::abs(h.probability(k) - p);
      (void)shots;
      return 0.5 * d;
    };
    const double tv_small = tv(phi3.sample(q, 1000, 5), 1000);
    const double tv_large = tv(phi3.sample(q, 100000, 5), 100000);
    CHECK(tv_large < tv_small);
  }
}

TEST_CASE("outcome keys carry the aux dash") {
  const StateVector phi2 =
      conditional_swap_phase(antisymmetrize_aux(mark_largest(demo_phi0())));
  const auto h = phi2.marginal(demo_measured_qubits());
  CHECK(h.probability("00-00") == Approx(0.5).margin(1e-12));
  CHECK(h.probability("10-10") == Approx(0.25).margin(1e-12));
  CHECK(h.probability("01-01") == Approx(0.25).margin(1e-12));
}
