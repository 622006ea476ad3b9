/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include "qregsim/jellium.hpp"
#include "qregsim/statevector.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

namespace qregsim {

/// V exp(-i D t) V^dagger applied to a vector, from one eigendecomposition
/// of a Hermitian matrix.
inline Eigen::VectorXcd exact_evolve(const Eigen::MatrixXcd& h,
                                     const Eigen::VectorXcd& initial,
                                     double t) {
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("exact_evolve: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd c = es.eigenvectors().adjoint() * initial;
  Eigen::VectorXcd phased(c.size());
  for (Eigen::Index k = 0; k < c.size(); ++k)
    phased(k) = std::exp(cplx(0.0, -es.eigenvalues()(k) * t)) * c(k);
  return es.eigenvectors() * phased;
}

/// Classical reference evolution: dense exponentiation of the physical
/// subspace Hamiltonian by eigendecomposition, reused across times.
/// The memory Hamiltonian acts as the identity on the auxiliary qubits, so a
/// full state is evolved sector by auxiliary sector.
class ExactOracle {
 public:
  ExactOracle(const MomentumLattice& lattice, const JelliumParams& params)
      : lattice_(lattice),
        layout_(jellium_layout(lattice)),
        sub_(lattice, layout_) {
    const Eigen::MatrixXcd h = dense_hamiltonian(lattice, params, sub_);
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("oracle: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    evecs_ = es.eigenvectors();
    evals_ = es.eigenvalues();
    hamiltonian_ = h;
  }

  const MemoryLayout& layout() const { return layout_; }
  const PhysicalSubspace& subspace() const { return sub_; }
  const Eigen::MatrixXcd& hamiltonian() const { return hamiltonian_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

  Eigen::VectorXcd evolve_subspace(const Eigen::VectorXcd& initial,
                                   double t) const {
    if (initial.size() != static_cast<Eigen::Index>(sub_.dim()))
      throw std::invalid_argument("oracle: subspace dimension mismatch");
    const Eigen::VectorXcd c = evecs_.adjoint() * initial;
    Eigen::VectorXcd phased(c.size());
    for (Eigen::Index k = 0; k < c.size(); ++k)
      phased(k) = std::exp(cplx(0.0, -evals_(k) * t)) * c(k);
    return evecs_ * phased;
  }

  /// Evolve a full memory state whose support lies in the physical subspace
  /// (times any auxiliary configuration).
  StateVector evolve_full(const StateVector& initial, double t) const {
    if (initial.layout().total_qubits() != layout_.total_qubits())
      throw std::invalid_argument("oracle: layout mismatch");
    StateVector out(layout_);
    const std::uint64_t naux = std::uint64_t{1} << layout_.aux_bits;
    double captured = 0.0;
    for (std::uint64_t aux = 0; aux < naux; ++aux) {
      Eigen::VectorXcd sec(static_cast<Eigen::Index>(sub_.dim()));
      double secn = 0.0;
      for (std::size_t k = 0; k < sub_.dim(); ++k) {
        const cplx a = initial.amplitude(
            layout_.with_aux_value(sub_.full_index(k), aux));
        sec(static_cast<Eigen::Index>(k)) = a;
        secn += std::norm(a);
      }
      captured += secn;
      if (secn == 0.0) continue;
      const Eigen::VectorXcd ev = evolve_subspace(sec, t);
      for (std::size_t k = 0; k < sub_.dim(); ++k)
        out.set_amplitude(layout_.with_aux_value(sub_.full_index(k), aux),
                          ev(static_cast<Eigen::Index>(k)));
    }
    if (std::abs(captured - initial.amplitudes().squaredNorm()) > 1e-9)
      throw std::invalid_argument(
          "oracle: state has support outside the physical subspace");
    return out;
  }

  /// Energy expectation on a full state (for conservation checks).
  double energy(const StateVector& state) const {
    double e = 0.0;
    const std::uint64_t naux = std::uint64_t{1} << layout_.aux_bits;
    for (std::uint64_t aux = 0; aux < naux; ++aux) {
      Eigen::VectorXcd sec(static_cast<Eigen::Index>(sub_.dim()));
      for (std::size_t k = 0; k < sub_.dim(); ++k)
        sec(static_cast<Eigen::Index>(k)) =
            state.amplitude(layout_.with_aux_value(sub_.full_index(k), aux));
      e += (sec.adjoint() * hamiltonian_ * sec)(0, 0).real();
    }
    return e;
  }

 private:
  MomentumLattice lattice_;
  MemoryLayout layout_;
  PhysicalSubspace sub_;
  Eigen::MatrixXcd evecs_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd hamiltonian_;
};

/// P(t_j) for a caller-supplied observable along the exact trajectory.
inline std::vector<double> exact_probability_series(
    const ExactOracle& oracle, const StateVector& initial,
    const std::vector<double>& times,
    const std::function<double(const StateVector&)>& measure) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(measure(oracle.evolve_full(initial, t)));
  return out;
}

}  // namespace qregsim
