/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include "qregsim/layout.hpp"
#include "qregsim/operators.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qregsim {

/// Measurement outcomes: counts when sampled (shots > 0), exact Born-rule
/// probabilities when shots == 0. Keys are bitstrings of the measured
/// qubits, most-significant first, with a dash after the auxiliary block
/// whenever the measured set spans both.
struct Histogram {
  long long shots = 0;
  std::map<std::string, double> entries;

  double probability(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) return 0.0;
    return shots > 0 ? it->second / static_cast<double>(shots) : it->second;
  }
};

/// Dense normalized statevector over the full memory Hilbert space.
class StateVector {
 public:
  explicit StateVector(const MemoryLayout& layout)
      : layout_(layout), amp_(Eigen::VectorXcd::Zero(layout.dim())) {}

  static StateVector vacuum(const MemoryLayout& layout) {
    StateVector s(layout);
    s.amp_(0) = cplx(1.0, 0.0);
    return s;
  }

  static StateVector basis_state(const MemoryLayout& layout, std::uint64_t idx) {
    StateVector s(layout);
    if (idx >= layout.dim()) throw std::out_of_range("basis index");
    s.amp_(static_cast<Eigen::Index>(idx)) = cplx(1.0, 0.0);
    return s;
  }

  const MemoryLayout& layout() const { return layout_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  cplx amplitude(std::uint64_t idx) const {
    return amp_(static_cast<Eigen::Index>(idx));
  }
  void set_amplitude(std::uint64_t idx, cplx v) {
    amp_(static_cast<Eigen::Index>(idx)) = v;
  }
  double norm() const { return amp_.norm(); }
  void normalize() { amp_ /= amp_.norm(); }

  /// Apply an operator embedded on its acted qubits, restricted to the
  /// subspace where every control qubit holds its stated value; identity
  /// elsewhere. Controls must be disjoint from the acted qubits.
  void apply(const MemoryOperator& op,
             const std::vector<std::pair<int, int>>& controls = {}) {
    apply_block(op.acted(), controls, [&](Eigen::VectorXcd& block) {
      block = op.matrix() * block;
    });
  }

  /// Same embedding/control logic with a dense block matrix.
  void apply_dense(const std::vector<int>& acted, const Eigen::MatrixXcd& u,
                   const std::vector<std::pair<int, int>>& controls = {}) {
    if (u.rows() != u.cols() || u.rows() != (Eigen::Index(1) << acted.size()))
      throw std::invalid_argument("apply_dense: dimension mismatch");
    apply_block(acted, controls, [&](Eigen::VectorXcd& block) {
      block = u * block;
    });
  }

  /// U^dagger U = Id check for an operator, used on demand before applying
  /// something that is claimed unitary.
  static bool is_unitary(const MemoryOperator& op, double tol = 1e-10) {
    SparseMat p = SparseMat(op.matrix().adjoint()) * op.matrix();
    SparseMat i(op.dim(), op.dim());
    i.setIdentity();
    SparseMat d = SparseMat(p - i);
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseMat::InnerIterator it(d, k); it; ++it)
        if (std::abs(it.value()) > tol) return false;
    return true;
  }

  /// Exact Born-rule marginal over the listed qubits.
  Histogram marginal(const std::vector<int>& qubits) const {
    const auto sel = checked_qubits(qubits);
    const std::uint64_t nout = std::uint64_t{1} << sel.size();
    std::vector<double> prob(nout, 0.0);
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
      const double w = std::norm(amp_(static_cast<Eigen::Index>(i)));
      if (w == 0.0) continue;
      prob[outcome_of(i, sel)] += w;
    }
    Histogram h;
    for (std::uint64_t o = 0; o < nout; ++o)
      if (prob[o] > 0.0) h.entries[format_outcome(o, sel)] = prob[o];
    return h;
  }

  /// Probability that the listed qubits read the given outcome value
  /// (bit t of `outcome` belongs to the t-th smallest listed qubit).
  double probability_of(const std::vector<int>& qubits,
                        std::uint64_t outcome) const {
    const auto sel = checked_qubits(qubits);
    double p = 0.0;
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (outcome_of(i, sel) != outcome) continue;
      p += std::norm(amp_(static_cast<Eigen::Index>(i)));
    }
    return p;
  }

  /// Seeded multinomial draw from the exact marginal. Deterministic for a
  /// given (state, qubits, shots, seed); the generator is a fixed 64-bit
  /// Mersenne twister mapped to [0,1) through the top 53 bits.
  Histogram sample(const std::vector<int>& qubits, long long shots,
                   std::uint64_t seed) const {
    if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
    const auto sel = checked_qubits(qubits);
    const std::uint64_t nout = std::uint64_t{1} << sel.size();
    std::vector<double> prob(nout, 0.0);
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t i = 0; i < dim; ++i)
      prob[outcome_of(i, sel)] += std::norm(amp_(static_cast<Eigen::Index>(i)));
    std::vector<double> cdf(nout);
    double acc = 0.0;
    for (std::uint64_t o = 0; o < nout; ++o) {
      acc += prob[o];
      cdf[o] = acc;
    }
    std::mt19937_64 gen(seed);
    std::vector<long long> counts(nout, 0);
    for (long long s = 0; s < shots; ++s) {
      const double u = double(gen() >> 11) * (1.0 / 9007199254740992.0) * acc;
      std::uint64_t lo = 0, hi = nout - 1;
      while (lo < hi) {
        const std::uint64_t mid = (lo + hi) / 2;
        if (cdf[mid] > u) hi = mid; else lo = mid + 1;
      }
      ++counts[lo];
    }
    Histogram h;
    h.shots = shots;
    for (std::uint64_t o = 0; o < nout; ++o)
      if (counts[o] > 0)
        h.entries[format_outcome(o, sel)] = static_cast<double>(counts[o]);
    return h;
  }

  /// Reduced density matrix of the listed qubits (partial-trace oracle).
  Eigen::MatrixXcd reduced_density(const std::vector<int>& qubits) const {
    const auto sel = checked_qubits(qubits);
    const Eigen::Index d = Eigen::Index(1) << sel.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    const std::uint64_t dim = layout_.dim();
    // group amplitudes by the complement pattern
    std::vector<int> rest;
    for (int q = 0; q < layout_.total_qubits(); ++q) {
      bool in = false;
      for (int s : sel) if (s == q) in = true;
      if (!in) rest.push_back(q);
    }
    const std::uint64_t nrest = std::uint64_t{1} << rest.size();
    for (std::uint64_t r = 0; r < nrest; ++r) {
      std::uint64_t base = 0;
      for (std::size_t t = 0; t < rest.size(); ++t)
        base |= ((r >> t) & 1) << rest[t];
      for (std::uint64_t a = 0; a < std::uint64_t(d); ++a) {
        std::uint64_t ia = base;
        for (std::size_t t = 0; t < sel.size(); ++t)
          ia |= ((a >> t) & 1) << sel[t];
        const cplx va = amp_(static_cast<Eigen::Index>(ia));
        if (va == cplx(0.0)) continue;
        for (std::uint64_t b = 0; b < std::uint64_t(d); ++b) {
          std::uint64_t ib = base;
          for (std::size_t t = 0; t < sel.size(); ++t)
            ib |= ((b >> t) & 1) << sel[t];
          rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
              va * std::conj(amp_(static_cast<Eigen::Index>(ib)));
        }
      }
    }
    (void)dim;
    return rho;
  }

  /// Outcome key formatting shared with Histogram consumers.
  std::string format_outcome(std::uint64_t outcome,
                             const std::vector<int>& sel) const {
    std::string s;
    bool has_aux = false, has_mem = false;
    for (int q : sel)
      (q >= layout_.register_qubits() ? has_aux : has_mem) = true;
    for (int t = static_cast<int>(sel.size()) - 1; t >= 0; --t) {
      s.push_back(((outcome >> t) & 1) ? '1' : '0');
      if (has_aux && has_mem && t > 0 && sel[t] >= layout_.register_qubits() &&
          sel[t - 1] < layout_.register_qubits())
        s.push_back('-');
    }
    return s;
  }

 private:
  template <typename BlockFn>
  void apply_block(const std::vector<int>& acted,
                   const std::vector<std::pair<int, int>>& controls,
                   BlockFn&& fn) {
    const int n = layout_.total_qubits();
    std::vector<char> is_acted(n, 0);
    for (int q : acted) {
      if (q < 0 || q >= n) throw std::out_of_range("acted qubit out of range");
      is_acted[q] = 1;
    }
    for (const auto& [cq, cv] : controls) {
      if (cq < 0 || cq >= n) throw std::out_of_range("control qubit out of range");
      if (is_acted[cq])
        throw std::invalid_argument("controls overlap acted qubits");
      if (cv != 0 && cv != 1)
        throw std::invalid_argument("control value must be 0 or 1");
    }
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
      if (!is_acted[q]) rest.push_back(q);

    const std::uint64_t nblock = std::uint64_t{1} << acted.size();
    std::vector<std::uint64_t> scatter(nblock);
    for (std::uint64_t b = 0; b < nblock; ++b) {
      std::uint64_t v = 0;
      for (std::size_t t = 0; t < acted.size(); ++t)
        v |= ((b >> t) & 1) << acted[t];
      scatter[b] = v;
    }

    Eigen::VectorXcd block(static_cast<Eigen::Index>(nblock));
    const std::uint64_t nrest = std::uint64_t{1} << rest.size();
    for (std::uint64_t r = 0; r < nrest; ++r) {
      std::uint64_t base = 0;
      for (std::size_t t = 0; t < rest.size(); ++t)
        base |= ((r >> t) & 1) << rest[t];
      bool pass = true;
      for (const auto& [cq, cv] : controls)
        if (static_cast<int>((base >> cq) & 1) != cv) { pass = false; break; }
      if (!pass) continue;
      for (std::uint64_t b = 0; b < nblock; ++b)
        block(static_cast<Eigen::Index>(b)) =
            amp_(static_cast<Eigen::Index>(base | scatter[b]));
      fn(block);
      for (std::uint64_t b = 0; b < nblock; ++b)
        amp_(static_cast<Eigen::Index>(base | scatter[b])) =
            block(static_cast<Eigen::Index>(b));
    }
  }

  std::vector<int> checked_qubits(const std::vector<int>& qubits) const {
    if (qubits.empty()) throw std::invalid_argument("no qubits selected");
    std::vector<int> sel = qubits;
    std::sort(sel.begin(), sel.end());
    for (std::size_t k = 0; k < sel.size(); ++k) {
      if (sel[k] < 0 || sel[k] >= layout_.total_qubits())
        throw std::out_of_range("qubit index out of range");
      if (k > 0 && sel[k] == sel[k - 1])
        throw std::invalid_argument("duplicate qubit index");
    }
    return sel;
  }

  MemoryLayout layout_;
  Eigen::VectorXcd amp_;

  std::uint64_t outcome_of(std::uint64_t idx, const std::vector<int>& sel) const {
    std::uint64_t o = 0;
    for (std::size_t t = 0; t < sel.size(); ++t)
      o |= ((idx >> sel[t]) & 1) << t;
    return o;
  }
};

/// All-zeros product state |Omega> = |Omega>_n ... |Omega>_1 with cleared
/// auxiliary qubits.
inline StateVector init_vacuum(const MemoryLayout& layout) {
  return StateVector::vacuum(layout);
}

}  // namespace qregsim
