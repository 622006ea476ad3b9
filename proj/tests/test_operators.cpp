/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qregsim/operators.hpp"

#include "test_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qregsim;

TEST_CASE("set_scrap transfer rule") {
  const auto op = set_scrap("001", "000");
  REQUIRE(op.width() == 3);
  Eigen::VectorXcd e000 = Eigen::VectorXcd::Zero(8);
  e000(0) = 1.0;
  Eigen::VectorXcd out = op.matrix() * e000;
  CHECK(std::abs(out(1) - cplx(1.0)) < 1e-15);  // |001> as an integer is 1

  // projector on its own state
  const auto proj = set_scrap("101", "101");
  Eigen::VectorXcd e101 = Eigen::VectorXcd::Zero(8);
  e101(0b101) = 1.0;
  CHECK((proj.matrix() * e101 - e101).norm() == 0.0);

  // delta rule: acting on y != from gives zero
  Eigen::VectorXcd e9 = Eigen::VectorXcd::Zero(8);
  e9(0b011) = 1.0;
  CHECK((op.matrix() * e9).norm() == 0.0);

  CHECK_THROWS_AS(set_scrap("01", "011"), std::invalid_argument);
  CHECK_THROWS_AS(set_scrap("0x", "01"), std::invalid_argument);
}

TEST_CASE("operator algebra against dense kron oracle") {
  // two random operators on overlapping qubit sets of a 5-qubit space
  const Eigen::MatrixXcd a = test::random_hermitian(4, 21);
  const Eigen::MatrixXcd b = test::random_hermitian(8, 22);
  const MemoryOperator opa = MemoryOperator::from_dense({1, 3}, a);
  const MemoryOperator opb = MemoryOperator::from_dense({0, 1, 4}, b);

  // dense reference by explicit bit bookkeeping
  const int n = 5;
  const Eigen::Index d = 1 << n;
  auto embed = [&](const Eigen::MatrixXcd& m, const std::vector<int>& q) {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) {
        Eigen::Index br = 0, bc = 0;
        bool diag = true;
        for (int t = 0; t < n; ++t) {
          bool acted = false;
          for (std::size_t k = 0; k < q.size(); ++k)
            if (q[k] == t) {
              br |= ((r >> t) & 1) << k;
              bc |= ((c >> t) & 1) << k;
              acted = true;
            }
          if (!acted && ((r >> t) & 1) != ((c >> t) & 1)) diag = false;
        }
        if (diag) full(r, c) = m(br, bc);
      }
    return full;
  };
  const Eigen::MatrixXcd ref =
      embed(a, {1, 3}) * embed(b, {0, 1, 4}) + embed(b, {0, 1, 4});
  const MemoryOperator got = add(compose(opa, opb), opb);
  CHECK((got.expanded_to({0, 1, 2, 3, 4}).to_dense() -
         embed(ref, {0, 1, 2, 3, 4}))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("adjoint and hermiticity") {
  const Eigen::MatrixXcd h = test::random_hermitian(8, 5);
  const MemoryOperator op = MemoryOperator::from_dense({0, 2, 3}, h);
  CHECK(op.is_hermitian());
  CHECK(max_abs_diff(op, op.adjoint()) < 1e-14);
  const MemoryOperator up =
      MemoryOperator::from_dense({0, 2, 3}, test::random_unitary(8, 6));
  CHECK_FALSE(up.is_hermitian());
  CHECK(StateVector::is_unitary(up));
}

TEST_CASE("tensor requires disjoint qubit sets") {
  const auto a = MemoryOperator::identity({0, 1});
  const auto b = MemoryOperator::identity({1, 2});
  CHECK_THROWS_AS(tensor(a, b), std::invalid_argument);
}
