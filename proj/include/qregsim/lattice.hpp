/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qregsim {

/// Integer point of the 2D momentum lattice; the physical momentum is
/// kbar = sqrt(4*pi/N_e) * (i, j) in dimensionless units.
struct LatticePoint {
  int i = 0;
  int j = 0;
  friend bool operator==(LatticePoint a, LatticePoint b) {
    return a.i == b.i && a.j == b.j;
  }
  friend bool operator!=(LatticePoint a, LatticePoint b) { return !(a == b); }
  LatticePoint operator-() const { return {-i, -j}; }
  LatticePoint operator+(LatticePoint o) const { return {i + o.i, j + o.j}; }
  LatticePoint operator-(LatticePoint o) const { return {i - o.i, j - o.j}; }
  int norm2() const { return i * i + j * j; }
};

enum class Spin : int { down = 0, up = 1 };

enum class Discretization { A, B };

/// Physical constants of the jellium model. E_0 = e^2/a_0 = 340 eV and the
/// Wigner-Seitz ratio r_s = r_0/a_0 is a free parameter.
struct JelliumParams {
  double n_electrons = 2.0;
  double r_s = 30.0;
  double e0_ev = 340.0;

  void validate() const {
    if (n_electrons < 1.0) throw std::invalid_argument("n_electrons must be >= 1");
    if (r_s <= 0.0) throw std::invalid_argument("r_s must be > 0");
    if (e0_ev <= 0.0) throw std::invalid_argument("e0_ev must be > 0");
  }
  /// |kbar| of the unit lattice vector.
  double unit_kbar() const { return std::sqrt(4.0 * M_PI / n_electrons); }
};

/// Kinetic energy e_k = |kbar|^2 E_0 / (2 r_s^2) in eV.
inline double kinetic_energy(LatticePoint p, const JelliumParams& params) {
  params.validate();
  const double u = params.unit_kbar();
  return p.norm2() * u * u * params.e0_ev / (2.0 * params.r_s * params.r_s);
}

/// Exchange coupling lambda_q = E_0 / (r_s N_e |qbar|) in eV. The point
/// q = (0,0) is excluded by regularization.
inline double coupling(LatticePoint q, const JelliumParams& params) {
  params.validate();
  if (q.norm2() == 0)
    throw std::invalid_argument(
        "coupling: q = (0,0) is excluded by regularization");
  return params.e0_ev /
         (params.r_s * params.n_electrons * params.unit_kbar() *
          std::sqrt(static_cast<double>(q.norm2())));
}

/// Finite 2D momentum lattice with its qubit codification.
///
/// Discretization A holds the 5 points {C,F,G,H,K} on 3 momentum qubits,
/// exactly the published codification table (with the H entry read as
/// (1,0); the table's duplicate (0,1) contradicts the lattice figure).
/// Discretization B holds 13 points on 4 momentum qubits: the A subset keeps
/// its codes zero-extended, the remaining letters follow alphabetically.
/// Letters are assigned in reading order of the lattice figure (top row
/// first, left to right). The all-zeros pattern codifies no physical state.
class MomentumLattice {
 public:
  static MomentumLattice build(Discretization disc) {
    MomentumLattice lat;
    lat.disc_ = disc;
    if (disc == Discretization::A) {
      lat.momentum_bits_ = 3;
      lat.points_ = {{0, 1}, {-1, 0}, {0, 0}, {1, 0}, {0, -1}};
      lat.letters_ = {'C', 'F', 'G', 'H', 'K'};
    } else {
      lat.momentum_bits_ = 4;
      lat.points_ = {{0, 1},  {-1, 0},  {0, 0},  {1, 0},  {0, -1},
                     {0, 2},  {-1, 1},  {1, 1},  {-2, 0}, {2, 0},
                     {-1, -1}, {1, -1}, {0, -2}};
      lat.letters_ = {'C', 'F', 'G', 'H', 'K', 'A', 'B',
                      'D', 'E', 'I', 'J', 'L', 'M'};
    }
    return lat;
  }

  Discretization discretization() const { return disc_; }
  int momentum_bits() const { return momentum_bits_; }
  const std::vector<LatticePoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  bool contains(LatticePoint p) const { return find(p) >= 0; }

  /// Momentum code of a point; codes run 1..size() in codification order.
  std::uint64_t encode(LatticePoint p) const {
    const int k = find(p);
    if (k < 0) {
      std::ostringstream os;
      os << "point (" << p.i << "," << p.j << ") is not on the lattice";
      throw std::invalid_argument(os.str());
    }
    return static_cast<std::uint64_t>(k) + 1;
  }

  /// Point of a momentum code; nullopt for the all-zeros pattern and for
  /// unused patterns (no physical state).
  std::optional<LatticePoint> decode(std::uint64_t code) const {
    if (code == 0 || code > points_.size()) return std::nullopt;
    return points_[code - 1];
  }

  char letter(LatticePoint p) const { return letters_[find_checked(p)]; }

  LatticePoint point_of_letter(char c) const {
    for (std::size_t k = 0; k < letters_.size(); ++k)
      if (letters_[k] == c) return points_[k];
    throw std::invalid_argument(std::string("no lattice point labelled ") + c);
  }

  /// All points with the given squared radius (a kinetic-energy shell).
  std::vector<LatticePoint> shell(int norm2) const {
    std::vector<LatticePoint> out;
    for (const auto& p : points_)
      if (p.norm2() == norm2) out.push_back(p);
    return out;
  }

  /// Distinct nonzero differences of lattice points: the only momentum
  /// transfers that can produce an on-lattice term.
  std::vector<LatticePoint> exchange_vectors() const {
    std::vector<LatticePoint> out;
    for (const auto& a : points_)
      for (const auto& b : points_) {
        const LatticePoint q = a - b;
        if (q.norm2() == 0) continue;
        bool seen = false;
        for (const auto& r : out)
          if (r == q) { seen = true; break; }
        if (!seen) out.push_back(q);
      }
    return out;
  }

  std::string code_bits(std::uint64_t code) const {
    std::string s;
    for (int b = momentum_bits_ - 1; b >= 0; --b)
      s.push_back((code >> b) & 1 ? '1' : '0');
    return s;
  }

  /// Codification table as CSV: bitstring,label,i,j (None row included).
  std::string codification_csv() const {
    std::ostringstream os;
    os << "bitstring,label,i,j\n";
    os << code_bits(0) << ",None,,\n";
    for (std::size_t k = 0; k < points_.size(); ++k)
      os << code_bits(k + 1) << ',' << letters_[k] << ',' << points_[k].i
         << ',' << points_[k].j << '\n';
    return os.str();
  }

 private:
  int find(LatticePoint p) const {
    for (std::size_t k = 0; k < points_.size(); ++k)
      if (points_[k] == p) return static_cast<int>(k);
    return -1;
  }
  int find_checked(LatticePoint p) const {
    const int k = find(p);
    if (k < 0) throw std::invalid_argument("point not on lattice");
    return k;
  }

  Discretization disc_ = Discretization::A;
  int momentum_bits_ = 3;
  std::vector<LatticePoint> points_;
  std::vector<char> letters_;
};

inline MomentumLattice build_lattice(Discretization disc) {
  return MomentumLattice::build(disc);
}

/// Register bitstring [presence | spin | momentum] of a physical state as an
/// unsigned integer; an empty register is all zeros.
inline std::uint64_t encode_state_value(bool presence, Spin spin,
                                        LatticePoint p,
                                        const MomentumLattice& lattice) {
  if (!presence) return 0;
  const std::uint64_t code = lattice.encode(p);
  return (std::uint64_t{1} << (lattice.momentum_bits() + 1)) |
         (std::uint64_t(static_cast<int>(spin)) << lattice.momentum_bits()) |
         code;
}

/// Same as encode_state_value but rendered as a bitstring.
inline std::string encode_state(bool presence, Spin spin, LatticePoint p,
                                const MomentumLattice& lattice) {
  const std::uint64_t v =
      presence ? encode_state_value(true, spin, p, lattice) : 0;
  std::string s;
  for (int b = lattice.momentum_bits() + 1; b >= 0; --b)
    s.push_back((v >> b) & 1 ? '1' : '0');
  return s;
}

}  // namespace qregsim
