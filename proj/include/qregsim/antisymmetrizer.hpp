/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include "qregsim/layout.hpp"
#include "qregsim/statevector.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qregsim {

/// Position of the register holding the strictly largest ordering key
/// (the register bitstring read as an unsigned integer): 2 (aux |10>) when
/// register 2 is larger, 1 (aux |01>) when register 1 is larger, 0 when
/// fewer than two registers are occupied or the keys are equal.
inline std::uint64_t ordering_code(const MemoryLayout& layout,
                                   std::uint64_t basis) {
  const std::uint64_t v2 = layout.register_value(basis, 2);
  const std::uint64_t v1 = layout.register_value(basis, 1);
  if (!layout.occupied(v2) || !layout.occupied(v1)) return 0;
  if (v2 > v1) return 2;
  if (v1 > v2) return 1;
  return 0;
}

namespace detail {

inline void require_pipeline_layout(const MemoryLayout& layout) {
  if (layout.n_registers != 2 || layout.aux_bits != 2)
    throw std::invalid_argument(
        "antisymmetrizer: needs 2 registers and 2 auxiliary qubits");
}

/// XOR the auxiliary register with the computed position of the largest
/// occupied register. An involutive permutation: it both marks and, applied
/// to a consistently-ordered state, clears the auxiliary qubits.
inline StateVector xor_largest_position(const StateVector& in) {
  const MemoryLayout& layout = in.layout();
  require_pipeline_layout(layout);
  StateVector out(layout);
  const std::uint64_t dim = layout.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    const cplx a = in.amplitude(i);
    if (a == cplx(0.0)) continue;
    const std::uint64_t code = ordering_code(layout, i);
    out.set_amplitude(layout.with_aux_value(i, layout.aux_value(i) ^ code), a);
  }
  return out;
}

}  // namespace detail

/// Mark the register holding the largest state on the auxiliary qubits
/// (aux |10>: register 2, aux |01>: register 1). Branches with fewer than
/// two occupied registers keep aux |00>. Expects cleared auxiliary qubits.
inline StateVector mark_largest(const StateVector& in) {
#ifndef NDEBUG
  for (std::uint64_t i = 0; i < in.layout().dim(); ++i)
    assert(in.amplitude(i) == cplx(0.0) || in.layout().aux_value(i) == 0);
#endif
  return detail::xor_largest_position(in);
}

/// Antisymmetrize the auxiliary register on branches whose memory carries a
/// largest-register position: |10> -> (|10>-|01>)/sqrt(2) where register 2
/// is larger, |01> -> (|01>-|10>)/sqrt(2) where register 1 is larger (the
/// orthogonal complement closes the rotation); aux |00> branches untouched.
inline StateVector antisymmetrize_aux(const StateVector& in) {
  const MemoryLayout& layout = in.layout();
  detail::require_pipeline_layout(layout);
  StateVector out = in;
  const double inv = 1.0 / std::sqrt(2.0);
  const std::uint64_t nmem = std::uint64_t{1} << layout.register_qubits();
  for (std::uint64_t m = 0; m < nmem; ++m) {
    const std::uint64_t code = ordering_code(layout, m);
    if (code == 0) continue;
    const std::uint64_t i10 = layout.with_aux_value(m, 2);
    const std::uint64_t i01 = layout.with_aux_value(m, 1);
    const cplx a = in.amplitude(i10);
    const cplx b = in.amplitude(i01);
    if (code == 2) {
      // images: |10> -> (|10>-|01>)/sqrt2, |01> -> (|10>+|01>)/sqrt2
      out.set_amplitude(i10, (a + b) * inv);
      out.set_amplitude(i01, (-a + b) * inv);
    } else {
      // images: |01> -> (|01>-|10>)/sqrt2, |10> -> (|01>+|10>)/sqrt2
      out.set_amplitude(i01, (b + a) * inv);
      out.set_amplitude(i10, (-b + a) * inv);
    }
  }
  return out;
}

/// Swap the full register contents and flip the phase (Z on the second
/// auxiliary qubit after the swap) on branches where the second auxiliary
/// qubit is 1.
inline StateVector conditional_swap_phase(const StateVector& in) {
  const MemoryLayout& layout = in.layout();
  detail::require_pipeline_layout(layout);
  StateVector out(layout);
  const std::uint64_t dim = layout.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    const cplx a = in.amplitude(i);
    if (a == cplx(0.0)) continue;
    if ((layout.aux_value(i) & 1) == 0) {
      out.set_amplitude(i, a);
      continue;
    }
    const std::uint64_t v2 = layout.register_value(i, 2);
    const std::uint64_t v1 = layout.register_value(i, 1);
    std::uint64_t j = layout.with_register_value(i, 2, v1);
    j = layout.with_register_value(j, 1, v2);
    out.set_amplitude(j, -a);
  }
  return out;
}

/// Locate the Largest: XOR the auxiliary register with the position of the
/// largest occupied register, returning aux to |00> on every branch of a
/// consistently antisymmetrized state.
inline StateVector locate_largest_uncompute(const StateVector& in) {
  return detail::xor_largest_position(in);
}

/// Full unitary antisymmetrization pipeline phi_0 -> phi_3.
inline StateVector antisymmetrize(const StateVector& in) {
  return locate_largest_uncompute(
      conditional_swap_phase(antisymmetrize_aux(mark_largest(in))));
}

}  // namespace qregsim
