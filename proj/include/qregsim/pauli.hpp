/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include "qregsim/operators.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace qregsim {

/// One term of a Pauli expansion. The word runs over {I,X,Y,Z} with the
/// most-significant acted qubit first, matching ket notation.
struct PauliTerm {
  cplx coeff;
  std::string word;
};

/// Exact expansion of an operator in the Pauli basis,
/// coeff_P = tr(P M) / 2^n. Terms with |coeff| <= 1e-14 are dropped; the
/// result is ordered by (x-mask, z-mask) of the word.
inline std::vector<PauliTerm> pauli_decompose(const MemoryOperator& op) {
  const int n = op.width();
  if (n > 16) throw std::invalid_argument("pauli_decompose: operator too wide");
  const std::uint64_t nz = std::uint64_t{1} << n;
  // coefficient accumulator indexed by (xmask, zmask); xmask values present
  // are sparse, so collect per xmask on demand.
  std::vector<std::vector<cplx>> acc;  // acc[k] over zmask for xmask xs[k]
  std::vector<std::uint64_t> xs;

  const SparseMat& m = op.matrix();
  const double inv = 1.0 / static_cast<double>(nz);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it) {
      const std::uint64_t row = static_cast<std::uint64_t>(it.row());
      const std::uint64_t col = static_cast<std::uint64_t>(it.col());
      const std::uint64_t xmask = row ^ col;
      std::size_t slot = xs.size();
      for (std::size_t s = 0; s < xs.size(); ++s)
        if (xs[s] == xmask) { slot = s; break; }
      if (slot == xs.size()) {
        xs.push_back(xmask);
        acc.emplace_back(nz, cplx(0.0));
      }
      // tr(P M) picks P[col][row]... P_{row,col} with M_{row,col}: the trace
      // sum is over tr(P M) = sum_{a,b} P_{a,b} M_{b,a}; here b=row, a=col.
      for (std::uint64_t zmask = 0; zmask < nz; ++zmask) {
        cplx phase(1.0, 0.0);
        for (int t = 0; t < n; ++t) {
          const int xb = (xmask >> t) & 1;
          const int zb = (zmask >> t) & 1;
          const int in = (row >> t) & 1;   // M row bit = P column bit
          const int out = (col >> t) & 1;  // P row bit
          if (!xb && !zb) continue;                       // I
          if (!xb && zb) { if (in) phase = -phase; }      // Z, diagonal
          else if (xb && !zb) { /* X entry is 1 */ }      // X
          else {                                          // Y
            phase *= (out == 1) ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
          }
        }
        acc[slot][zmask] += inv * phase * it.value();
      }
    }

  std::vector<PauliTerm> out;
  // deterministic order: ascending xmask, then zmask
  std::vector<std::size_t> order(xs.size());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  for (std::size_t s : order)
    for (std::uint64_t zmask = 0; zmask < nz; ++zmask) {
      const cplx c = acc[s][zmask];
      if (std::abs(c) <= 1e-14) continue;
      std::string w(n, 'I');
      for (int t = 0; t < n; ++t) {
        const int xb = (xs[s] >> t) & 1;
        const int zb = (zmask >> t) & 1;
        char g = 'I';
        if (xb && zb) g = 'Y';
        else if (xb) g = 'X';
        else if (zb) g = 'Z';
        w[n - 1 - t] = g;  // most-significant qubit first
      }
      out.push_back({c, w});
    }
  return out;
}

/// Dense entry point; the dimension must be a power of two.
inline std::vector<PauliTerm> pauli_decompose(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("pauli_decompose: matrix must be square");
  const Eigen::Index d = m.rows();
  if ((d & (d - 1)) != 0)
    throw std::invalid_argument("pauli_decompose: dimension is not a power of 2");
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  std::vector<int> acted(n);
  for (int k = 0; k < n; ++k) acted[k] = k;
  return pauli_decompose(MemoryOperator::from_dense(acted, m));
}

/// Rebuild the dense matrix from a Pauli expansion (test oracle inverse).
inline Eigen::MatrixXcd pauli_reconstruct(const std::vector<PauliTerm>& terms,
                                          int n_qubits) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  Eigen::Matrix2cd g[4];
  g[0] << 1, 0, 0, 1;
  g[1] << 0, 1, 1, 0;
  g[2] << 0, cplx(0, -1), cplx(0, 1), 0;
  g[3] << 1, 0, 0, -1;
  auto gate_of = [](char c) {
    switch (c) {
      case 'I': return 0;
      case 'X': return 1;
      case 'Y': return 2;
      case 'Z': return 3;
    }
    throw std::invalid_argument("bad Pauli letter");
  };
  for (const auto& t : terms) {
    if (static_cast<int>(t.word.size()) != n_qubits)
      throw std::invalid_argument("pauli_reconstruct: word length mismatch");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Ones(1, 1);
    for (char c : t.word) {
      Eigen::MatrixXcd next(p.rows() * 2, p.cols() * 2);
      const Eigen::Matrix2cd& gg = g[gate_of(c)];
      // word is most-significant-first, so extend towards lower qubits
      for (Eigen::Index r = 0; r < p.rows(); ++r)
        for (Eigen::Index cc = 0; cc < p.cols(); ++cc)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              next(2 * r + a, 2 * cc + b) = p(r, cc) * gg(a, b);
      p = std::move(next);
    }
    out += t.coeff * p;
  }
  return out;
}

/// Text serialization, one term per line: "coeff_re coeff_im WORD".
inline std::string pauli_serialize(const std::vector<PauliTerm>& terms) {
  std::string out;
  char buf[96];
  for (const auto& t : terms) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %s\n", t.coeff.real(),
                  t.coeff.imag(), t.word.c_str());
    out += buf;
  }
  return out;
}

}  // namespace qregsim
