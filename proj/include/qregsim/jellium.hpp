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

#include <Eigen/Dense>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qregsim {

/// One ordered term of the momentum-exchange sum:
/// lambda_q a+_{k1+q,eta1} a+_{k2-q,eta2} a_{k2,eta2} a_{k1,eta1}.
struct ExchangeTerm {
  LatticePoint k1, k2, q;
  Spin eta1 = Spin::down, eta2 = Spin::down;
  double lambda = 0.0;
};

/// Memory layout used by the jellium experiments for a given lattice:
/// two spin-full registers plus the two auxiliary qubits of the initial
/// state preparation.
inline MemoryLayout jellium_layout(const MomentumLattice& lattice) {
  MemoryLayout layout;
  layout.n_registers = 2;
  layout.spin_bits = 1;
  layout.momentum_bits = lattice.momentum_bits();
  layout.aux_bits = 2;
  return layout;
}

/// All ordered exchange terms with q != 0 and both outgoing momenta on the
/// lattice. q ranges over the differences of lattice points; any other q
/// contributes no on-lattice term. Spins pass through unchanged.
inline std::vector<ExchangeTerm> enumerate_exchange_terms(
    const MomentumLattice& lattice, const JelliumParams& params) {
  params.validate();
  std::vector<ExchangeTerm> terms;
  const auto qs = lattice.exchange_vectors();
  for (const auto& k1 : lattice.points())
    for (const auto& k2 : lattice.points())
      for (const auto& q : qs) {
        if (!lattice.contains(k1 + q) || !lattice.contains(k2 - q)) continue;
        const double lam = coupling(q, params);
        for (Spin e1 : {Spin::down, Spin::up})
          for (Spin e2 : {Spin::down, Spin::up})
            terms.push_back({k1, k2, q, e1, e2, lam});
      }
  return terms;
}

inline std::string exchange_terms_csv(const std::vector<ExchangeTerm>& terms) {
  std::ostringstream os;
  os << "k1_i,k1_j,k2_i,k2_j,q_i,q_j,eta1,eta2,lambda_eV\n";
  char buf[64];
  for (const auto& t : terms) {
    std::snprintf(buf, sizeof(buf), "%.12g", t.lambda);
    os << t.k1.i << ',' << t.k1.j << ',' << t.k2.i << ',' << t.k2.j << ','
       << t.q.i << ',' << t.q.j << ',' << (t.eta1 == Spin::up ? "up" : "down")
       << ',' << (t.eta2 == Spin::up ? "up" : "down") << ',' << buf << '\n';
  }
  return os.str();
}

/// Qubits of the spin+momentum block of register r.
inline std::vector<int> spin_momentum_qubits(const MemoryLayout& layout, int r) {
  std::vector<int> q;
  for (int b = 0; b < layout.momentum_bits + layout.spin_bits; ++b)
    q.push_back(layout.register_base(r) + b);
  return q;
}

/// Diagonal kinetic generator sum_k e_k (1_spin (x) |k><k|) on one
/// register's spin+momentum qubits; the all-zeros momentum pattern and the
/// unused patterns codify no physical state and receive coefficient zero.
inline MemoryOperator free_generator(const MomentumLattice& lattice,
                                     const JelliumParams& params,
                                     const MemoryLayout& layout, int r = 1) {
  const int w = layout.momentum_bits + layout.spin_bits;
  const Eigen::Index d = Eigen::Index(1) << w;
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index v = 0; v < d; ++v) {
    const std::uint64_t code =
        std::uint64_t(v) & ((std::uint64_t{1} << layout.momentum_bits) - 1);
    const auto p = lattice.decode(code);
    if (!p) continue;
    const double e = kinetic_energy(*p, params);
    if (e != 0.0) trips.emplace_back(v, v, cplx(e));
  }
  SparseMat m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return MemoryOperator(spin_momentum_qubits(layout, r), std::move(m));
}

/// Hermitian momentum-exchange generator on the spin+momentum qubits of both
/// registers, the exponent of the two-register evolution factor:
///
///   sum_q sum_{p,k} lambda_q/2 [ (1 (x) |p+q><p|) (x) (1 (x) |k-q><k|)
///                              + (1 (x) |k-q><k|) (x) (1 (x) |p+q><p|) ] .
///
/// The 1/2 counts every scattering event once: the ordered double sum covers
/// each transfer from both ends, and the published coupling table pins the
/// single-event matrix element <(0,1),(0,-1)|G|(0,0),(0,0)> = lambda_(0,1).
inline MemoryOperator exchange_generator(const MomentumLattice& lattice,
                                         const JelliumParams& params,
                                         const MemoryLayout& layout) {
  params.validate();
  const int w = layout.momentum_bits + layout.spin_bits;
  const int mb = layout.momentum_bits;
  const Eigen::Index d = Eigen::Index(1) << (2 * w);
  std::vector<Eigen::Triplet<cplx>> trips;
  const auto qs = lattice.exchange_vectors();
  for (const auto& q : qs) {
    const double half_lambda = 0.5 * coupling(q, params);
    for (const auto& p : lattice.points()) {
      if (!lattice.contains(p + q)) continue;
      const std::uint64_t cp = lattice.encode(p);
      const std::uint64_t cpq = lattice.encode(p + q);
      for (const auto& k : lattice.points()) {
        if (!lattice.contains(k - q)) continue;
        const std::uint64_t ck = lattice.encode(k);
        const std::uint64_t ckq = lattice.encode(k - q);
        for (std::uint64_t s2 = 0; s2 < 2; ++s2)
          for (std::uint64_t s1 = 0; s1 < 2; ++s1) {
            const std::uint64_t hi2 = s2 << mb, hi1 = s1 << mb;
            // (p -> p+q) on register 2, (k -> k-q) on register 1
            trips.emplace_back(
                static_cast<Eigen::Index>(((hi2 | cpq) << w) | (hi1 | ckq)),
                static_cast<Eigen::Index>(((hi2 | cp) << w) | (hi1 | ck)),
                cplx(half_lambda));
            // the swapped bracket: (k -> k-q) on register 2, (p -> p+q) on 1
            trips.emplace_back(
                static_cast<Eigen::Index>(((hi2 | ckq) << w) | (hi1 | cpq)),
                static_cast<Eigen::Index>(((hi2 | ck) << w) | (hi1 | cp)),
                cplx(half_lambda));
          }
      }
    }
  }
  SparseMat m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  const auto q1 = spin_momentum_qubits(layout, 1);
  const auto q2 = spin_momentum_qubits(layout, 2);
  std::vector<int> acted = q1;
  acted.insert(acted.end(), q2.begin(), q2.end());
  return MemoryOperator(std::move(acted), std::move(m));
}

/// The encoded subspace with both registers occupied and physical momentum
/// codes, auxiliary qubits cleared. Basis ordering follows the register
/// values, so simulator amplitudes transfer without re-indexing.
class PhysicalSubspace {
 public:
  PhysicalSubspace(const MomentumLattice& lattice, const MemoryLayout& layout)
      : layout_(layout) {
    const int w = layout.momentum_bits + layout.spin_bits;
    const std::uint64_t pres = std::uint64_t{1} << w;
    for (std::uint64_t sm2 = 0; sm2 < pres; ++sm2) {
      if (!lattice.decode(sm2 & ((1u << layout.momentum_bits) - 1))) continue;
      for (std::uint64_t sm1 = 0; sm1 < pres; ++sm1) {
        if (!lattice.decode(sm1 & ((1u << layout.momentum_bits) - 1))) continue;
        const std::uint64_t v2 = pres | sm2, v1 = pres | sm1;
        std::uint64_t idx = layout.with_register_value(0, 2, v2);
        idx = layout.with_register_value(idx, 1, v1);
        full_index_.push_back(idx);
      }
    }
  }

  const MemoryLayout& layout() const { return layout_; }
  std::size_t dim() const { return full_index_.size(); }
  std::uint64_t full_index(std::size_t k) const { return full_index_[k]; }

  std::size_t position_of(std::uint64_t full_idx) const {
    for (std::size_t k = 0; k < full_index_.size(); ++k)
      if (full_index_[k] == full_idx) return k;
    throw std::out_of_range("index not in physical subspace");
  }

 private:
  MemoryLayout layout_;
  std::vector<std::uint64_t> full_index_;
};

/// Dense Hamiltonian on the physical subspace: per-register kinetic energies
/// on the diagonal plus the exchange generator.
inline Eigen::MatrixXcd dense_hamiltonian(const MomentumLattice& lattice,
                                          const JelliumParams& params,
                                          const PhysicalSubspace& sub) {
  const MemoryLayout& layout = sub.layout();
  const Eigen::Index d = static_cast<Eigen::Index>(sub.dim());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  const std::uint64_t mmask = (std::uint64_t{1} << layout.momentum_bits) - 1;
  for (Eigen::Index a = 0; a < d; ++a) {
    const std::uint64_t idx = sub.full_index(a);
    const auto p2 = lattice.decode(layout.register_value(idx, 2) & mmask);
    const auto p1 = lattice.decode(layout.register_value(idx, 1) & mmask);
    h(a, a) = kinetic_energy(*p2, params) + kinetic_energy(*p1, params);
  }
  // exchange entries: local block index is (sm2 << w) | sm1
  const int w = layout.momentum_bits + layout.spin_bits;
  const std::uint64_t pres = std::uint64_t{1} << w;
  const MemoryOperator g = exchange_generator(lattice, params, layout);
  std::vector<Eigen::Index> pos(std::uint64_t{1} << (2 * w),
                                Eigen::Index(-1));
  for (std::size_t k = 0; k < sub.dim(); ++k) {
    const std::uint64_t idx = sub.full_index(k);
    const std::uint64_t sm2 = layout.register_value(idx, 2) & (pres - 1);
    const std::uint64_t sm1 = layout.register_value(idx, 1) & (pres - 1);
    pos[(sm2 << w) | sm1] = static_cast<Eigen::Index>(k);
  }
  const SparseMat& m = g.matrix();
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it) {
      const Eigen::Index r = pos[static_cast<std::uint64_t>(it.row())];
      const Eigen::Index c = pos[static_cast<std::uint64_t>(it.col())];
      if (r < 0 || c < 0)
        throw std::logic_error("exchange entry outside the physical subspace");
      h(r, c) += it.value();
    }
  return h;
}

}  // namespace qregsim
