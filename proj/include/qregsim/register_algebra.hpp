/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include "qregsim/lattice.hpp"
#include "qregsim/layout.hpp"
#include "qregsim/operators.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qregsim {

inline std::vector<int> register_qubit_list(const MemoryLayout& layout, int r) {
  std::vector<int> q(layout.bits_per_register());
  for (int b = 0; b < layout.bits_per_register(); ++b)
    q[b] = layout.register_base(r) + b;
  return q;
}

inline std::vector<int> all_register_qubits(const MemoryLayout& layout) {
  std::vector<int> q(layout.register_qubits());
  for (int b = 0; b < layout.register_qubits(); ++b) q[b] = b;
  return q;
}

/// |to><from| on the qubits of register r.
inline MemoryOperator register_transfer(const MemoryLayout& layout, int r,
                                        std::uint64_t to, std::uint64_t from) {
  return set_scrap_value(layout.bits_per_register(), to, from)
      .with_acted(register_qubit_list(layout, r));
}

/// Projector onto register r being strictly empty, i.e. in the all-zeros
/// vacuum state |Omega>. A presence-0 register with nonzero content bits is
/// unreachable and is not counted as empty.
inline MemoryOperator strict_empty_projector(const MemoryLayout& layout, int r) {
  return register_transfer(layout, r, 0, 0);
}

/// Projector onto the presence qubit of register r holding `value`;
/// identity on the register's content bits.
inline MemoryOperator presence_projector(const MemoryLayout& layout, int r,
                                         int value) {
  SparseMat m(2, 2);
  m.insert(value, value) = cplx(1.0);
  m.makeCompressed();
  return MemoryOperator({layout.presence_qubit(r)}, m);
}

/// First-empty projector P^(n)_j: registers 1..j occupied (presence = 1),
/// registers j+1..n strictly empty.
inline MemoryOperator projector_first_empty(const MemoryLayout& layout, int j) {
  if (j < 0 || j > layout.n_registers)
    throw std::out_of_range("projector_first_empty: register count out of range");
  MemoryOperator p = MemoryOperator::identity({});
  bool first = true;
  for (int r = 1; r <= layout.n_registers; ++r) {
    const MemoryOperator factor = (r <= j) ? presence_projector(layout, r, 1)
                                           : strict_empty_projector(layout, r);
    p = first ? factor : tensor(p, factor);
    first = false;
  }
  return p;
}

/// Step-antisymmetrizer A_{2<-1} as the matrix used inside the creation and
/// annihilation operators: (Id - SWAP)/sqrt(2) on the both-registers-occupied
/// subspace and zero elsewhere. It maps |x>_2|y>_1 to the normalized
/// antisymmetric combination and annihilates equal contents; it is a scaled
/// projector, not a unitary (the paper's unitary realization with auxiliary
/// qubits lives in the antisymmetrizer pipeline).
inline MemoryOperator step_antisymmetrizer(const MemoryLayout& layout) {
  if (layout.n_registers != 2)
    throw std::invalid_argument("step_antisymmetrizer: built for 2 registers");
  const int bpr = layout.bits_per_register();
  const std::uint64_t nreg = std::uint64_t{1} << bpr;
  const double inv = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::uint64_t v2 = 0; v2 < nreg; ++v2) {
    if (!layout.occupied(v2)) continue;
    for (std::uint64_t v1 = 0; v1 < nreg; ++v1) {
      if (!layout.occupied(v1)) continue;
      if (v1 == v2) continue;  // (Id - SWAP) cancels on equal contents
      const auto col = static_cast<Eigen::Index>((v2 << bpr) | v1);
      trips.emplace_back(col, col, cplx(inv));
      trips.emplace_back(static_cast<Eigen::Index>((v1 << bpr) | v2), col,
                         cplx(-inv));
    }
  }
  const Eigen::Index d = Eigen::Index(1) << (2 * bpr);
  SparseMat m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return MemoryOperator(all_register_qubits(layout), std::move(m));
}

/// n-register creation operator for the full register value v (presence,
/// spin and momentum bits packed), on a two-register memory:
///   a+ = P_0 (x) (set_v)_1  +  A_{2<-1} . (set_v)_2 (x) P_1 .
inline MemoryOperator creation_value(const MemoryLayout& layout,
                                     std::uint64_t v) {
  if (layout.n_registers != 2)
    throw std::invalid_argument("creation: built for 2 registers");
  if (!layout.occupied(v))
    throw std::invalid_argument("creation: value must have presence bit set");
  const MemoryOperator t1 =
      tensor(strict_empty_projector(layout, 2), register_transfer(layout, 1, v, 0));
  const MemoryOperator t2 = compose(
      step_antisymmetrizer(layout),
      tensor(register_transfer(layout, 2, v, 0), presence_projector(layout, 1, 1)));
  return add(t1, t2).expanded_to(all_register_qubits(layout));
}

/// Annihilation built independently in the adjoint arrangement
/// (scrap to the left, antisymmetrizer to the right); equals
/// creation_value(v)^dagger as a matrix.
inline MemoryOperator annihilation_value(const MemoryLayout& layout,
                                         std::uint64_t v) {
  if (layout.n_registers != 2)
    throw std::invalid_argument("annihilation: built for 2 registers");
  if (!layout.occupied(v))
    throw std::invalid_argument("annihilation: value must have presence bit set");
  const MemoryOperator t1 =
      tensor(strict_empty_projector(layout, 2), register_transfer(layout, 1, 0, v));
  const MemoryOperator t2 = compose(
      tensor(register_transfer(layout, 2, 0, v), presence_projector(layout, 1, 1)),
      step_antisymmetrizer(layout));
  return add(t1, t2).expanded_to(all_register_qubits(layout));
}

inline MemoryOperator creation(const MemoryLayout& layout,
                               const MomentumLattice& lattice, Spin spin,
                               LatticePoint p) {
  return creation_value(layout, encode_state_value(true, spin, p, lattice));
}

inline MemoryOperator annihilation(const MemoryLayout& layout,
                                   const MomentumLattice& lattice, Spin spin,
                                   LatticePoint p) {
  return annihilation_value(layout, encode_state_value(true, spin, p, lattice));
}

/// {a_r, a+_s} as a matrix on the register space.
inline MemoryOperator anticommutator_values(const MemoryLayout& layout,
                                            std::uint64_t r, std::uint64_t s) {
  const MemoryOperator ar = annihilation_value(layout, r);
  const MemoryOperator cs = creation_value(layout, s);
  return add(compose(ar, cs), compose(cs, ar));
}

inline MemoryOperator anticommutator(const MemoryLayout& layout,
                                     const MomentumLattice& lattice, Spin sr,
                                     LatticePoint pr, Spin ss, LatticePoint ps) {
  return anticommutator_values(layout,
                               encode_state_value(true, sr, pr, lattice),
                               encode_state_value(true, ss, ps, lattice));
}

/// The non-canonical boundary term of the anticommutation relation:
///   A_{2<-1} . (|1><1| (x) s+ s)_2 (x) P^(1)_1 . A_{2<-1} ,
/// nonzero only on a fully occupied memory. Note the content transfer is
/// |s><r| for {a_r, a+_s} (the published equation prints the subscripts the
/// other way round; the algebra and the matrices fix this order).
inline MemoryOperator anticommutator_boundary(const MemoryLayout& layout,
                                              std::uint64_t r, std::uint64_t s) {
  const MemoryOperator a = step_antisymmetrizer(layout);
  const MemoryOperator transfer =
      tensor(register_transfer(layout, 2, s, r), presence_projector(layout, 1, 1));
  return compose(a, compose(transfer, a));
}

/// Right-hand side of the anticommutation relation:
/// delta_{r,s} on the >=1-empty right-packed subspace plus the boundary term.
inline MemoryOperator anticommutator_rhs(const MemoryLayout& layout,
                                         std::uint64_t r, std::uint64_t s) {
  MemoryOperator bd = anticommutator_boundary(layout, r, s)
                          .expanded_to(all_register_qubits(layout));
  if (r != s) return bd;
  MemoryOperator pi = projector_first_empty(layout, 0);
  for (int j = 1; j < layout.n_registers; ++j)
    pi = add(pi, projector_first_empty(layout, j));
  return add(pi.expanded_to(all_register_qubits(layout)), bd);
}

}  // namespace qregsim
