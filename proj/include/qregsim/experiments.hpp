/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include "qregsim/antisymmetrizer.hpp"
#include "qregsim/exact_oracle.hpp"
#include "qregsim/register_algebra.hpp"
#include "qregsim/spectral.hpp"
#include "qregsim/trotter.hpp"
#include "qregsim/version.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qregsim {

/// Settings of one experiment run; defaults follow the published setup
/// (N_e = 2, r_s = 30, E_0 = 340 eV, 1000 shots per time point).
struct RunConfig {
  std::string discretization = "A";
  double n_electrons = 2.0;
  double r_s = 30.0;
  double e0_ev = 340.0;
  double dt = 0.055;
  int n_points = 100;
  int n_trotter = 1;
  long long shots = 1000;
  std::uint64_t seed = 1337;
  std::string mode = "sampled";  ///< "sampled" or "exact"
  double threshold = 0.04;       ///< peak threshold fraction
  int zero_pad = 1;
  std::string out_dir = "out";

  Discretization disc() const {
    if (discretization == "A" || discretization == "a") return Discretization::A;
    if (discretization == "B" || discretization == "b") return Discretization::B;
    throw std::invalid_argument("discretization must be A or B");
  }
  JelliumParams params() const { return {n_electrons, r_s, e0_ev}; }
  bool exact_mode() const {
    if (mode == "exact") return true;
    if (mode == "sampled") return false;
    throw std::invalid_argument("mode must be 'sampled' or 'exact'");
  }
  void validate() const {
    disc();
    params().validate();
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (n_points < 2) throw std::invalid_argument("n_points must be >= 2");
    if (n_trotter < 1) throw std::invalid_argument("n_trotter must be >= 1");
    if (!exact_mode() && shots < 1)
      throw std::invalid_argument("shots must be >= 1 in sampled mode");
    if (!(threshold > 0.0 && threshold < 1.0))
      throw std::invalid_argument("threshold must be in (0,1)");
    if (zero_pad < 1) throw std::invalid_argument("zero_pad must be >= 1");
  }
};

/// Canonical key=value rendering, the input of the config hash.
inline std::string config_text(const RunConfig& c, const std::string& command) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "command=%s\ndiscretization=%s\nn_electrons=%.12g\nr_s=%.12g\n"
                "e0_ev=%.12g\ndt=%.12g\nn_points=%d\nn_trotter=%d\nshots=%lld\n"
                "seed=%llu\nmode=%s\nthreshold=%.12g\nzero_pad=%d\n",
                command.c_str(), c.discretization.c_str(), c.n_electrons, c.r_s,
                c.e0_ev, c.dt, c.n_points, c.n_trotter, c.shots,
                static_cast<unsigned long long>(c.seed), c.mode.c_str(),
                c.threshold, c.zero_pad);
  return buf;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

/// '#'-prefixed metadata header embedded in every output file; contains
/// everything needed to reproduce the file bit-exactly.
inline std::string metadata_header(const RunConfig& c, const std::string& command) {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(config_text(c, command))));
  os << "# qregsim " << version_string << "\n";
  os << "# config_hash=" << buf << "\n";
  std::istringstream lines(config_text(c, command));
  std::string line;
  while (std::getline(lines, line)) os << "# " << line << "\n";
  return os.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

inline std::string histogram_csv(const Histogram& h, const Histogram& exact) {
  std::ostringstream os;
  os << "bitstring,count,probability\n";
  char buf[128];
  // union of keys, ordered (std::map iteration)
  auto emit = [&](const std::string& key) {
    const double cnt = h.shots > 0 ? h.probability(key) * double(h.shots) : 0.0;
    std::snprintf(buf, sizeof(buf), "%s,%lld,%.12g\n", key.c_str(),
                  static_cast<long long>(cnt + 0.5), exact.probability(key));
    os << buf;
  };
  std::map<std::string, int> keys;
  for (const auto& [k, v] : h.entries) keys[k] = 1;
  for (const auto& [k, v] : exact.entries) keys[k] = 1;
  for (const auto& [k, v] : keys) emit(k);
  return os.str();
}

// ---------------------------------------------------------------------------
// antisym-demo

struct AntisymDemoResult {
  Histogram exact_with_uncompute;
  Histogram exact_without_uncompute;
  Histogram sampled_with_uncompute;
  Histogram sampled_without_uncompute;
};

/// Layout of the worked two-particle example: scalar registers of one
/// presence plus two momentum qubits, momenta p0=01, p1=10, p2=11.
inline MemoryLayout demo_layout() {
  MemoryLayout l;
  l.n_registers = 2;
  l.spin_bits = 0;
  l.momentum_bits = 2;
  l.aux_bits = 2;
  return l;
}

/// The initial superposition phi_0 = (|Omega>|1p0> + |1p1>|1p0>)/sqrt2.
inline StateVector demo_phi0() {
  const MemoryLayout l = demo_layout();
  StateVector s(l);
  const double inv = 1.0 / std::sqrt(2.0);
  const std::uint64_t p0 = l.make_register_value(true, 0, 1);
  const std::uint64_t p1 = l.make_register_value(true, 0, 2);
  s.set_amplitude(l.with_register_value(0, 1, p0), cplx(inv));
  std::uint64_t i = l.with_register_value(0, 1, p0);
  i = l.with_register_value(i, 2, p1);
  s.set_amplitude(i, cplx(inv));
  return s;
}

/// Measured qubits of the demo: the auxiliary register and the momentum
/// qubits of the second register.
inline std::vector<int> demo_measured_qubits() {
  const MemoryLayout l = demo_layout();
  return {l.momentum_qubit(2, 0), l.momentum_qubit(2, 1), l.aux_qubit(0),
          l.aux_qubit(1)};
}

inline AntisymDemoResult run_antisym_demo(const RunConfig& cfg) {
  cfg.validate();
  const auto qubits = demo_measured_qubits();
  const StateVector phi0 = demo_phi0();
  const StateVector phi2 =
      conditional_swap_phase(antisymmetrize_aux(mark_largest(phi0)));
  const StateVector phi3 = locate_largest_uncompute(phi2);

  AntisymDemoResult res;
  res.exact_without_uncompute = phi2.marginal(qubits);
  res.exact_with_uncompute = phi3.marginal(qubits);
  if (!cfg.exact_mode()) {
    res.sampled_without_uncompute = phi2.sample(qubits, cfg.shots, cfg.seed);
    res.sampled_with_uncompute = phi3.sample(qubits, cfg.shots, cfg.seed + 1);
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::string meta = metadata_header(cfg, "antisym-demo");
  write_file(std::filesystem::path(cfg.out_dir) / "antisym_entangled.csv",
             meta + histogram_csv(cfg.exact_mode() ? res.exact_without_uncompute
                                                   : res.sampled_without_uncompute,
                                  res.exact_without_uncompute));
  write_file(std::filesystem::path(cfg.out_dir) / "antisym_uncomputed.csv",
             meta + histogram_csv(cfg.exact_mode() ? res.exact_with_uncompute
                                                   : res.sampled_with_uncompute,
                                  res.exact_with_uncompute));
  return res;
}

// ---------------------------------------------------------------------------
// evolve

struct EvolveResult {
  TimeSeries simulated;          ///< Trotterized, sampled or exact marginal
  std::vector<double> exact;     ///< oracle column
};

/// Trotterized time evolution of the two-electron initial state, tracking
/// P(p0 in register 1) at every time point, with the exact-oracle reference.
inline EvolveResult run_evolve(const RunConfig& cfg, bool write_files = true) {
  cfg.validate();
  const MomentumLattice lattice = build_lattice(cfg.disc());
  const JelliumParams params = cfg.params();
  const MemoryLayout layout = jellium_layout(lattice);
  const LatticePoint p0{0, 0};
  const auto qubits = momentum_qubits(layout, 1);
  const std::uint64_t outcome = lattice.encode(p0);

  const TrotterEvolver evolver(lattice, params, layout);
  const ExactOracle oracle(lattice, params);

  StateVector state = prepare_initial_state(lattice, layout);
  EvolveResult res;
  res.simulated.dt = cfg.dt;
  res.simulated.shots = cfg.exact_mode() ? 0 : cfg.shots;
  res.simulated.seed = cfg.seed;
  std::mt19937_64 seeder(cfg.seed);
  for (int k = 0; k < cfg.n_points; ++k) {
    if (k > 0) {
      const double delta = cfg.dt / cfg.n_trotter;
      for (int s = 0; s < cfg.n_trotter; ++s) evolver.substep(state, delta);
    }
    double p;
    if (cfg.exact_mode()) {
      p = state.probability_of(qubits, outcome);
    } else {
      const Histogram h = state.sample(qubits, cfg.shots, seeder());
      std::string key;
      for (int b = layout.momentum_bits - 1; b >= 0; --b)
        key.push_back((outcome >> b) & 1 ? '1' : '0');
      p = h.probability(key);
    }
    res.simulated.values.push_back(p);
    const StateVector ex =
        oracle.evolve_full(prepare_initial_state(lattice, layout), cfg.dt * k);
    res.exact.push_back(ex.probability_of(qubits, outcome));
  }
  if (write_files) {
    std::filesystem::create_directories(cfg.out_dir);
    write_file(std::filesystem::path(cfg.out_dir) / "timeseries.csv",
               metadata_header(cfg, "evolve") +
                   timeseries_csv(res.simulated, res.exact));
  }
  return res;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumResult {
  EvolveResult series;
  Spectrum simulated;
  Spectrum exact;
  std::vector<Peak> simulated_peaks;
  std::vector<Peak> exact_peaks;
};

inline SpectrumResult run_spectrum(const RunConfig& cfg) {
  cfg.validate();
  SpectrumResult res;
  res.series = run_evolve(cfg, false);
  TimeSeries exact_series;
  exact_series.dt = cfg.dt;
  exact_series.values = res.series.exact;
  res.simulated = fourier_spectrum(res.series.simulated, cfg.zero_pad);
  res.exact = fourier_spectrum(exact_series, cfg.zero_pad);
  res.simulated_peaks = find_peaks(res.simulated, cfg.threshold);
  res.exact_peaks = find_peaks(res.exact, cfg.threshold);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string meta = metadata_header(cfg, "spectrum");
  const auto dir = std::filesystem::path(cfg.out_dir);
  write_file(dir / "timeseries.csv",
             meta + timeseries_csv(res.series.simulated, res.series.exact));
  write_file(dir / "spectrum_simulated.csv", meta + spectrum_csv(res.simulated));
  write_file(dir / "spectrum_exact.csv", meta + spectrum_csv(res.exact));
  write_file(dir / "peaks_simulated.csv", meta + peaks_csv(res.simulated_peaks));
  write_file(dir / "peaks_exact.csv", meta + peaks_csv(res.exact_peaks));
  return res;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Property suite behind the `verify` subcommand. Prints one line per check
/// and returns them; all checks green means conformance, and the forbidden
/// shell check reports the measured occupancy either way.
inline std::vector<VerifyCheck> run_verify(const RunConfig& cfg,
                                           std::ostream& log) {
  std::vector<VerifyCheck> checks;
  auto record = [&](const std::string& name, bool ok, const std::string& det) {
    checks.push_back({name, ok, det});
    log << (ok ? "PASS " : "FAIL ") << name << ": " << det << "\n";
  };
  char buf[256];

  // 1. anticommutation relation on discretization A
  {
    const MomentumLattice lat = build_lattice(Discretization::A);
    MemoryLayout layout = jellium_layout(lat);
    layout.aux_bits = 0;
    double worst = 0.0;
    const std::vector<std::pair<Spin, LatticePoint>> modes = {
        {Spin::down, {0, 0}}, {Spin::up, {0, 0}}, {Spin::down, {0, 1}},
        {Spin::up, {-1, 0}}};
    for (const auto& [sr, pr] : modes)
      for (const auto& [ss, ps] : modes) {
        const std::uint64_t r = encode_state_value(true, sr, pr, lat);
        const std::uint64_t s = encode_state_value(true, ss, ps, lat);
        worst = std::max(worst,
                         max_abs_diff(anticommutator_values(layout, r, s),
                                      anticommutator_rhs(layout, r, s)));
      }
    std::snprintf(buf, sizeof(buf), "max deviation %.3e (tol 1e-10)", worst);
    record("anticommutator-relation", worst < 1e-10, buf);
  }

  // 2. antisymmetrization pipeline
  {
    const StateVector phi3 = antisymmetrize(demo_phi0());
    const MemoryLayout l = phi3.layout();
    double asym = 0.0;
    const std::uint64_t nreg = std::uint64_t{1} << l.bits_per_register();
    for (std::uint64_t x = 0; x < nreg; ++x)
      for (std::uint64_t y = 0; y < nreg; ++y) {
        if (!l.occupied(x) || !l.occupied(y) || x == y) continue;
        std::uint64_t i = l.with_register_value(0, 2, x);
        i = l.with_register_value(i, 1, y);
        std::uint64_t j = l.with_register_value(0, 2, y);
        j = l.with_register_value(j, 1, x);
        asym = std::max(asym, std::abs(phi3.amplitude(i) + phi3.amplitude(j)));
      }
    const Eigen::MatrixXcd rho =
        phi3.reduced_density({l.aux_qubit(0), l.aux_qubit(1)});
    const double fid = rho(0, 0).real();
    std::snprintf(buf, sizeof(buf),
                  "antisymmetry defect %.3e, aux |00> fidelity defect %.3e",
                  asym, std::abs(1.0 - fid));
    record("antisymmetrization", asym < 1e-10 && std::abs(1.0 - fid) < 1e-10,
           buf);
  }

  // 3. product-formula error order on discretization A
  {
    const MomentumLattice lat = build_lattice(Discretization::A);
    const JelliumParams par{2.0, 30.0, 340.0};
    const MemoryLayout layout = jellium_layout(lat);
    const TrotterEvolver evolver(lat, par, layout);
    const ExactOracle oracle(lat, par);
    const StateVector init = prepare_initial_state(lat, layout);
    const double t = 1.1, dt = 0.055;
    const StateVector ref = oracle.evolve_full(init, t);
    std::vector<double> lx, ly;
    for (int n : {1, 2, 4, 8, 16}) {
      StateVector s = init;
      evolver.trotter_evolve(s, t, {dt, n});
      lx.push_back(std::log(double(n)));
      ly.push_back(std::log((s.amplitudes() - ref.amplitudes()).norm()));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sx += lx[k]; sy += ly[k]; sxx += lx[k] * lx[k]; sxy += lx[k] * ly[k];
    }
    const double n = double(lx.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::snprintf(buf, sizeof(buf), "log-log slope %.3f (window [-2.2,-1.8])",
                  slope);
    record("trotter-order", slope > -2.2 && slope < -1.8, buf);
  }

  // 4. momentum and spin conservation
  {
    const MomentumLattice lat = build_lattice(cfg.disc());
    const JelliumParams par = cfg.params();
    const MemoryLayout layout = jellium_layout(lat);
    const PhysicalSubspace sub(lat, layout);
    const Eigen::MatrixXcd h = dense_hamiltonian(lat, par, sub);
    const std::uint64_t mmask = (std::uint64_t{1} << layout.momentum_bits) - 1;
    const Eigen::Index d = static_cast<Eigen::Index>(sub.dim());
    Eigen::VectorXd px(d), py(d), nup(d), ndn(d);
    for (Eigen::Index a = 0; a < d; ++a) {
      const std::uint64_t idx = sub.full_index(a);
      double xi = 0, yj = 0, u = 0, dn = 0;
      for (int r = 1; r <= 2; ++r) {
        const std::uint64_t v = layout.register_value(idx, r);
        const LatticePoint p = *lat.decode(v & mmask);
        xi += p.i; yj += p.j;
        (((v >> layout.momentum_bits) & 1) ? u : dn) += 1.0;
      }
      px(a) = xi; py(a) = yj; nup(a) = u; ndn(a) = dn;
    }
    auto comm = [&](const Eigen::VectorXd& diag) {
      return (h * diag.asDiagonal() - diag.asDiagonal() * h)
          .cwiseAbs()
          .maxCoeff();
    };
    const double worst =
        std::max(std::max(comm(px), comm(py)), std::max(comm(nup), comm(ndn)));
    std::snprintf(buf, sizeof(buf), "max commutator entry %.3e (tol 1e-10)",
                  worst);
    record("conservation-laws", worst < 1e-10, buf);
  }

  // 5. forbidden shell occupancy on discretization B
  {
    const MomentumLattice lat = build_lattice(Discretization::B);
    const JelliumParams par = cfg.params();
    const MemoryLayout layout = jellium_layout(lat);
    const ExactOracle oracle(lat, par);
    const StateVector init = prepare_initial_state(lat, layout);
    const auto qubits = momentum_qubits(layout, 1);
    std::vector<LatticePoint> shell;
    for (char c : {'B', 'D', 'J', 'L'}) shell.push_back(lat.point_of_letter(c));
    double worst = 0.0;
    for (int k = 0; k < 151; ++k) {
      const StateVector s = oracle.evolve_full(init, 0.03 * k);
      double p = 0.0;
      for (const auto& pt : shell)
        p += s.probability_of(qubits, lat.encode(pt));
      worst = std::max(worst, p);
    }
    std::snprintf(buf, sizeof(buf),
                  "max summed probability of {B,D,J,L} = %.6f (bound 1e-8)",
                  worst);
    record("forbidden-shell", worst < 1e-8, buf);
  }

  return checks;
}

}  // namespace qregsim
