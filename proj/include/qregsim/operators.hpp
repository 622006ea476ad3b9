/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qregsim {

using cplx = std::complex<double>;
using SparseMat = Eigen::SparseMatrix<cplx>;

/// Sparse operator acting on a declared subset of qubits.
///
/// `acted` lists qubit indices in ascending order; bit t of a block index
/// corresponds to acted[t]. Embedding into the full memory space is by
/// identity on all other qubits and happens only at application time, so an
/// operator on k qubits is never materialised on the full space.
class MemoryOperator {
 public:
  MemoryOperator() = default;
  MemoryOperator(std::vector<int> acted_qubits, SparseMat matrix)
      : acted_(std::move(acted_qubits)), mat_(std::move(matrix)) {
    check_sorted(acted_);
    const Eigen::Index d = Eigen::Index(1) << acted_.size();
    if (mat_.rows() != d || mat_.cols() != d)
      throw std::invalid_argument("operator dimension does not match acted qubits");
  }

  static MemoryOperator identity(std::vector<int> acted_qubits) {
    const Eigen::Index d = Eigen::Index(1) << acted_qubits.size();
    SparseMat m(d, d);
    m.setIdentity();
    return MemoryOperator(std::move(acted_qubits), std::move(m));
  }

  static MemoryOperator from_dense(std::vector<int> acted_qubits,
                                   const Eigen::MatrixXcd& dense) {
    SparseMat m = dense.sparseView(0.0, 0.0);
    return MemoryOperator(std::move(acted_qubits), std::move(m));
  }

  const std::vector<int>& acted() const { return acted_; }
  const SparseMat& matrix() const { return mat_; }
  int width() const { return static_cast<int>(acted_.size()); }
  Eigen::Index dim() const { return mat_.rows(); }

  Eigen::MatrixXcd to_dense() const { return Eigen::MatrixXcd(mat_); }

  MemoryOperator adjoint() const {
    return MemoryOperator(acted_, SparseMat(mat_.adjoint()));
  }

  MemoryOperator scaled(cplx factor) const {
    return MemoryOperator(acted_, SparseMat(factor * mat_));
  }

  bool is_hermitian(double tol = 1e-12) const {
    SparseMat d = SparseMat(mat_ - SparseMat(mat_.adjoint()));
    for (int k = 0; k < d.outerSize(); ++k)
      for (SparseMat::InnerIterator it(d, k); it; ++it)
        if (std::abs(it.value()) > tol) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (int k = 0; k < mat_.outerSize(); ++k)
      for (SparseMat::InnerIterator it(mat_, k); it; ++it)
        m = std::max(m, std::abs(it.value()));
    return m;
  }

  /// Reinterpret the same matrix on a different qubit set of equal size.
  MemoryOperator with_acted(std::vector<int> acted_qubits) const {
    if (acted_qubits.size() != acted_.size())
      throw std::invalid_argument("with_acted: size mismatch");
    return MemoryOperator(std::move(acted_qubits), mat_);
  }

  /// Embed into a superset of qubits (identity on the added ones).
  MemoryOperator expanded_to(const std::vector<int>& target) const {
    check_sorted(target);
    // positions of acted_ inside target, and of the missing qubits
    std::vector<int> pos_acted, pos_free;
    std::size_t a = 0;
    for (std::size_t t = 0; t < target.size(); ++t) {
      if (a < acted_.size() && target[t] == acted_[a]) {
        pos_acted.push_back(static_cast<int>(t));
        ++a;
      } else {
        pos_free.push_back(static_cast<int>(t));
      }
    }
    if (a != acted_.size())
      throw std::invalid_argument("expanded_to: target must contain acted qubits");

    const std::uint64_t nfree = std::uint64_t{1} << pos_free.size();
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<std::size_t>(mat_.nonZeros()) * nfree);
    for (int k = 0; k < mat_.outerSize(); ++k)
      for (SparseMat::InnerIterator it(mat_, k); it; ++it) {
        const std::uint64_t r = static_cast<std::uint64_t>(it.row());
        const std::uint64_t c = static_cast<std::uint64_t>(it.col());
        std::uint64_t rbase = 0, cbase = 0;
        for (std::size_t t = 0; t < pos_acted.size(); ++t) {
          rbase |= ((r >> t) & 1) << pos_acted[t];
          cbase |= ((c >> t) & 1) << pos_acted[t];
        }
        for (std::uint64_t f = 0; f < nfree; ++f) {
          std::uint64_t fb = 0;
          for (std::size_t t = 0; t < pos_free.size(); ++t)
            fb |= ((f >> t) & 1) << pos_free[t];
          trips.emplace_back(static_cast<Eigen::Index>(rbase | fb),
                             static_cast<Eigen::Index>(cbase | fb), it.value());
        }
      }
    const Eigen::Index d = Eigen::Index(1) << target.size();
    SparseMat m(d, d);
    m.setFromTriplets(trips.begin(), trips.end());
    return MemoryOperator(target, std::move(m));
  }

 private:
  static void check_sorted(const std::vector<int>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
      if (v[k] <= v[k - 1])
        throw std::invalid_argument("acted qubits must be strictly ascending");
  }

  std::vector<int> acted_;
  SparseMat mat_;
};

inline std::vector<int> acted_union(const std::vector<int>& a,
                                    const std::vector<int>& b) {
  std::vector<int> u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return u;
}

/// Product A*B, aligning the operators on the union of their qubit sets.
inline MemoryOperator compose(const MemoryOperator& a, const MemoryOperator& b) {
  const auto u = acted_union(a.acted(), b.acted());
  const MemoryOperator ae = a.expanded_to(u);
  const MemoryOperator be = b.expanded_to(u);
  SparseMat m = ae.matrix() * be.matrix();
  m.prune(0.0, 0.0);
  return MemoryOperator(u, std::move(m));
}

inline MemoryOperator add(const MemoryOperator& a, const MemoryOperator& b) {
  const auto u = acted_union(a.acted(), b.acted());
  SparseMat m = a.expanded_to(u).matrix() + b.expanded_to(u).matrix();
  return MemoryOperator(u, std::move(m));
}

inline MemoryOperator subtract(const MemoryOperator& a, const MemoryOperator& b) {
  return add(a, b.scaled(-1.0));
}

/// Tensor-style combination of operators on disjoint qubit sets.
inline MemoryOperator tensor(const MemoryOperator& a, const MemoryOperator& b) {
  for (int q : a.acted())
    for (int p : b.acted())
      if (q == p) throw std::invalid_argument("tensor: overlapping qubit sets");
  return compose(a, b);
}

inline double max_abs_diff(const MemoryOperator& a, const MemoryOperator& b) {
  return subtract(a, b).max_abs();
}

/// Rank-1 transfer operator |to><from| on `width` qubits.
inline MemoryOperator set_scrap_value(int width, std::uint64_t to,
                                      std::uint64_t from) {
  const Eigen::Index d = Eigen::Index(1) << width;
  if (to >= std::uint64_t(d) || from >= std::uint64_t(d))
    throw std::invalid_argument("set_scrap: state out of range");
  std::vector<int> acted(width);
  for (int k = 0; k < width; ++k) acted[k] = k;
  std::vector<Eigen::Triplet<cplx>> trips{
      {static_cast<int>(to), static_cast<int>(from), cplx(1.0)}};
  SparseMat m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return MemoryOperator(std::move(acted), std::move(m));
}

/// Rank-1 transfer operator from bitstrings (most-significant bit first).
inline MemoryOperator set_scrap(const std::string& to, const std::string& from) {
  if (to.size() != from.size())
    throw std::invalid_argument("set_scrap: bitstring length mismatch");
  if (to.empty()) throw std::invalid_argument("set_scrap: empty bitstrings");
  auto parse = [](const std::string& s) {
    std::uint64_t v = 0;
    for (char c : s) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("set_scrap: bitstrings must be binary");
      v = (v << 1) | std::uint64_t(c == '1');
    }
    return v;
  };
  return set_scrap_value(static_cast<int>(to.size()), parse(to), parse(from));
}

}  // namespace qregsim
