/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qregsim {

/// Geometry of the quantum memory.
///
/// The memory holds `n_registers` particle registers of
/// [presence | spin | momentum] qubits plus an auxiliary block. Qubit q
/// contributes 2^q to a basis index. Register 1 occupies the
/// least-significant block (registers fill from right to left), the
/// auxiliary qubits sit in the most-significant block. Within one register
/// the momentum bits are the lowest, then the spin bit (when present), then
/// the presence bit, so the register bitstring printed presence-first reads
/// as an unsigned integer.
struct MemoryLayout {
  int n_registers = 2;
  int spin_bits = 1;  ///< 0 (scalar particles) or 1
  int momentum_bits = 3;
  int aux_bits = 2;

  int bits_per_register() const { return 1 + spin_bits + momentum_bits; }
  int register_qubits() const { return n_registers * bits_per_register(); }
  int total_qubits() const { return register_qubits() + aux_bits; }
  std::uint64_t dim() const { return std::uint64_t{1} << total_qubits(); }

  std::uint64_t register_mask() const {
    return (std::uint64_t{1} << bits_per_register()) - 1;
  }

  /// Lowest qubit index of register r (1-based, per the paper's counting).
  int register_base(int r) const {
    if (r < 1 || r > n_registers) throw std::out_of_range("register index");
    return (r - 1) * bits_per_register();
  }
  int momentum_qubit(int r, int bit) const {
    if (bit < 0 || bit >= momentum_bits) throw std::out_of_range("momentum bit");
    return register_base(r) + bit;
  }
  int spin_qubit(int r) const {
    if (spin_bits == 0) throw std::logic_error("layout has no spin qubit");
    return register_base(r) + momentum_bits;
  }
  int presence_qubit(int r) const {
    return register_base(r) + momentum_bits + spin_bits;
  }
  /// k = 0 is the least-significant auxiliary qubit (the "second" one when
  /// printed, i.e. the swap flag of the antisymmetrizer).
  int aux_qubit(int k) const {
    if (k < 0 || k >= aux_bits) throw std::out_of_range("aux qubit index");
    return register_qubits() + k;
  }

  std::uint64_t register_value(std::uint64_t basis, int r) const {
    return (basis >> register_base(r)) & register_mask();
  }
  std::uint64_t with_register_value(std::uint64_t basis, int r,
                                    std::uint64_t value) const {
    const int base = register_base(r);
    basis &= ~(register_mask() << base);
    return basis | (value << base);
  }
  std::uint64_t aux_value(std::uint64_t basis) const {
    return basis >> register_qubits();
  }
  std::uint64_t with_aux_value(std::uint64_t basis, std::uint64_t aux) const {
    const std::uint64_t mem = basis & ((std::uint64_t{1} << register_qubits()) - 1);
    return mem | (aux << register_qubits());
  }

  /// Compose a register value from its fields. `spin` is ignored for
  /// spin-less layouts; an unoccupied register is all zeros.
  std::uint64_t make_register_value(bool presence, int spin,
                                    std::uint64_t momentum_code) const {
    if (!presence) return 0;
    std::uint64_t v = momentum_code;
    if (spin_bits) v |= std::uint64_t(spin ? 1 : 0) << momentum_bits;
    v |= std::uint64_t{1} << (momentum_bits + spin_bits);
    return v;
  }
  bool occupied(std::uint64_t register_value) const {
    return (register_value >> (momentum_bits + spin_bits)) & 1;
  }
  std::uint64_t momentum_code_of(std::uint64_t register_value) const {
    return register_value & ((std::uint64_t{1} << momentum_bits) - 1);
  }

  /// Basis label printed most-significant qubit first, with a dash after the
  /// auxiliary block (the format of the measurement histograms).
  std::string format_basis(std::uint64_t basis) const {
    std::string s;
    for (int q = total_qubits() - 1; q >= 0; --q) {
      s.push_back((basis >> q) & 1 ? '1' : '0');
      if (aux_bits > 0 && q == register_qubits() && q > 0) s.push_back('-');
    }
    return s;
  }
};

}  // namespace qregsim
