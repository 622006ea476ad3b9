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

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace qregsim {

/// Product-formula configuration. dt is the macro time step in 1/eV; each
/// step is split into n_trotter symmetric substeps of length dt/n_trotter
/// (the Trotter interval).
struct TrotterConfig {
  double dt = 0.055;
  int n_trotter = 1;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw std::invalid_argument("dt must be positive and finite");
    if (n_trotter < 1) throw std::invalid_argument("n_trotter must be >= 1");
  }
};

/// Builds and applies the controlled evolution factors.
///
/// U11 adds to each occupied register the kinetic phase of its momentum,
/// realized as a presence-qubit-controlled diagonal (identity on the vacuum
/// branch). U22 is exp(-i dt G) of the two-register exchange generator,
/// applied under both presence qubits; with fewer than two particles it acts
/// as the identity. Exponentials come from one eigendecomposition of the
/// Hermitian generator on its acted qubits, so nothing is ever materialised
/// on the full memory space.
class TrotterEvolver {
 public:
  TrotterEvolver(const MomentumLattice& lattice, const JelliumParams& params,
                 const MemoryLayout& layout)
      : TrotterEvolver(layout, free_generator(lattice, params, layout),
                       exchange_generator(lattice, params, layout)) {}

  /// Generator-level constructor (tests substitute modified generators).
  TrotterEvolver(const MemoryLayout& layout, const MemoryOperator& free_gen,
                 const MemoryOperator& exchange_gen)
      : layout_(layout), exchange_acted_(exchange_gen.acted()) {
    if (layout.n_registers != 2)
      throw std::invalid_argument("evolver: built for 2 registers");
    if (!exchange_gen.is_hermitian(1e-12))
      throw std::invalid_argument("evolver: exchange generator not Hermitian");
    // per-basis kinetic energy: sum of the diagonal free generator over
    // occupied registers
    const Eigen::MatrixXcd f = free_gen.to_dense();
    const int w = layout.momentum_bits + layout.spin_bits;
    if (f.rows() != (Eigen::Index(1) << w))
      throw std::invalid_argument("evolver: free generator width mismatch");
    std::vector<double> esm(std::uint64_t{1} << w);
    for (Eigen::Index v = 0; v < f.rows(); ++v) esm[v] = f(v, v).real();
    energy_.resize(layout.dim());
    const std::uint64_t smmask = (std::uint64_t{1} << w) - 1;
    for (std::uint64_t i = 0; i < layout.dim(); ++i) {
      double e = 0.0;
      for (int r = 1; r <= layout.n_registers; ++r) {
        const std::uint64_t v = layout.register_value(i, r);
        if (layout.occupied(v)) e += esm[v & smmask];
      }
      energy_[i] = e;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(exchange_gen.to_dense());
    evecs_ = es.eigenvectors();
    evals_ = es.eigenvalues();
  }

  const MemoryLayout& layout() const { return layout_; }

  /// Free-energy factor U11(dt).
  void apply_u11(StateVector& state, double dt) const {
    for (std::uint64_t i = 0; i < layout_.dim(); ++i) {
      const double e = energy_[i];
      if (e == 0.0) continue;
      state.set_amplitude(i, state.amplitude(i) * std::exp(cplx(0.0, -e * dt)));
    }
  }

  /// Momentum-exchange factor U22(dt), controlled on both presence qubits.
  void apply_u22(StateVector& state, double dt) const {
    if (dt == 0.0) return;
    const Eigen::MatrixXcd& u = exponential(dt);
    state.apply_dense(exchange_acted_, u,
                      {{layout_.presence_qubit(1), 1},
                       {layout_.presence_qubit(2), 1}});
  }

  /// One symmetric substep U22(dt/2) U11(dt) U22(dt/2).
  void substep(StateVector& state, double dt) const {
    apply_u22(state, dt / 2.0);
    apply_u11(state, dt);
    apply_u22(state, dt / 2.0);
  }

  /// Product-formula evolution over t_total = n_steps * config.dt.
  void trotter_evolve(StateVector& state, double t_total,
                      const TrotterConfig& config) const {
    config.validate();
    const double steps = t_total / config.dt;
    const long long n_steps = std::llround(steps);
    if (n_steps < 0 || std::abs(steps - double(n_steps)) > 1e-9)
      throw std::invalid_argument(
          "trotter_evolve: t_total is not a multiple of dt");
    const double delta = config.dt / config.n_trotter;
    for (long long s = 0; s < n_steps * config.n_trotter; ++s)
      substep(state, delta);
  }

 private:
  const Eigen::MatrixXcd& exponential(double dt) const {
    auto it = cache_.find(dt);
    if (it != cache_.end()) return it->second;
    Eigen::MatrixXcd u(evecs_.rows(), evecs_.cols());
    Eigen::VectorXcd ph(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k)
      ph(k) = std::exp(cplx(0.0, -evals_(k) * dt));
    u = evecs_ * ph.asDiagonal() * evecs_.adjoint();
    return cache_.emplace(dt, std::move(u)).first->second;
  }

  MemoryLayout layout_;
  std::vector<int> exchange_acted_;
  std::vector<double> energy_;
  Eigen::MatrixXcd evecs_;
  Eigen::VectorXd evals_;
  mutable std::map<double, Eigen::MatrixXcd> cache_;
};

/// The two-electron initial state: both particles at momentum p0 = (0,0)
/// with opposite spins, auxiliary qubits entangled exactly as produced by
/// the marking and swap stages (they are not uncomputed):
///   (|10>_ax |up p0>_2 |down p0>_1 - |01>_ax |down p0>_2 |up p0>_1)/sqrt2.
inline StateVector prepare_initial_state(const MomentumLattice& lattice,
                                         const MemoryLayout& layout) {
  const LatticePoint p0{0, 0};
  const std::uint64_t vup = encode_state_value(true, Spin::up, p0, lattice);
  const std::uint64_t vdn = encode_state_value(true, Spin::down, p0, lattice);
  StateVector s(layout);
  const double inv = 1.0 / std::sqrt(2.0);
  std::uint64_t i = layout.with_register_value(0, 2, vup);
  i = layout.with_register_value(i, 1, vdn);
  s.set_amplitude(layout.with_aux_value(i, 2), cplx(inv));
  std::uint64_t j = layout.with_register_value(0, 2, vdn);
  j = layout.with_register_value(j, 1, vup);
  s.set_amplitude(layout.with_aux_value(j, 1), cplx(-inv));
  return s;
}

/// Momentum qubits of register r, the marginal tracked in the experiments.
inline std::vector<int> momentum_qubits(const MemoryLayout& layout, int r) {
  std::vector<int> q;
  for (int b = 0; b < layout.momentum_bits; ++b)
    q.push_back(layout.momentum_qubit(r, b));
  return q;
}

/// P(point in register r) of a state.
inline double momentum_probability(const StateVector& state,
                                   const MomentumLattice& lattice, int r,
                                   LatticePoint p) {
  return state.probability_of(momentum_qubits(state.layout(), r),
                              lattice.encode(p));
}

}  // namespace qregsim
