/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qregsim {

/// Uniformly sampled probability P(t_k = k * dt), k = 0..n-1, in 1/eV.
struct TimeSeries {
  double dt = 0.0;
  std::vector<double> values;
  long long shots = 0;       ///< 0 for exact marginals
  std::uint64_t seed = 0;

  std::size_t size() const { return values.size(); }
  double time(std::size_t k) const { return dt * static_cast<double>(k); }
};

/// Discrete Fourier transform magnitudes of a mean-subtracted series.
/// Frequencies are in cycles per unit time, i.e. eV for times in 1/eV; bin k
/// holds k * spacing for k <= n/2 and the mirrored negative frequency above.
struct Spectrum {
  double spacing = 0.0;
  std::vector<double> amplitude;

  std::size_t size() const { return amplitude.size(); }
  double frequency(std::size_t k) const {
    const auto n = static_cast<std::ptrdiff_t>(amplitude.size());
    const auto kk = static_cast<std::ptrdiff_t>(k);
    return spacing * static_cast<double>(kk <= n / 2 ? kk : kk - n);
  }
};

struct Peak {
  double frequency = 0.0;  ///< eV
  double period = 0.0;     ///< 1/eV, = 1/frequency
  double error = 0.0;      ///< bin spacing
  double amplitude = 0.0;  ///< spectrum magnitude
};

/// DFT of the mean-subtracted series. Mean subtraction removes the large
/// constant offset of a probability trace so the zero-frequency bin is
/// empty. zero_pad_factor > 1 appends (factor-1)*n zeros for a finer
/// frequency grid (used to separate near-degenerate components).
inline Spectrum fourier_spectrum(const TimeSeries& series,
                                 int zero_pad_factor = 1) {
  const std::size_t n = series.values.size();
  if (n < 2) throw std::invalid_argument("fourier_spectrum: need >= 2 samples");
  if (!(series.dt > 0.0))
    throw std::invalid_argument("fourier_spectrum: non-uniform or empty grid");
  if (zero_pad_factor < 1)
    throw std::invalid_argument("fourier_spectrum: bad zero_pad_factor");
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n);

  const std::size_t m = n * static_cast<std::size_t>(zero_pad_factor);
  Spectrum spec;
  spec.spacing = 1.0 / (static_cast<double>(m) * series.dt);
  spec.amplitude.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    double re = 0.0, im = 0.0;
    const double w = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
    for (std::size_t t = 0; t < n; ++t) {
      const double x = series.values[t] - mean;
      const double ph = w * static_cast<double>(t);
      re += x * std::cos(ph);
      im += x * std::sin(ph);
    }
    spec.amplitude[k] = std::hypot(re, im);
  }
  return spec;
}

/// Local maxima among the positive frequencies with amplitude at least
/// threshold_fraction of the largest positive-frequency amplitude. Each
/// peak carries the bin spacing as its frequency error. The default
/// threshold separates the resolved lines from spectral leakage at the
/// published resolutions.
inline std::vector<Peak> find_peaks(const Spectrum& spectrum,
                                    double threshold_fraction = 0.04) {
  if (spectrum.amplitude.empty())
    throw std::invalid_argument("find_peaks: empty spectrum");
  if (!(threshold_fraction > 0.0) || !(threshold_fraction < 1.0))
    throw std::invalid_argument("find_peaks: threshold_fraction must be in (0,1)");
  const std::size_t n = spectrum.amplitude.size();
  const std::size_t kmax = n / 2;
  double top = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k)
    top = std::max(top, spectrum.amplitude[k]);
  std::vector<Peak> peaks;
  if (top <= 0.0) return peaks;
  const double thr = threshold_fraction * top;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double a = spectrum.amplitude[k];
    if (a < thr) continue;
    const double left = spectrum.amplitude[k - 1];
    const double right = k + 1 <= kmax ? spectrum.amplitude[k + 1] : 0.0;
    if ((k > 1 && a < left) || a < right) continue;
    if (k == 1 && a < left) continue;  // shoulder of the (empty) DC bin
    const double f = spectrum.spacing * static_cast<double>(k);
    peaks.push_back({f, 1.0 / f, spectrum.spacing, a});
  }
  return peaks;
}

inline std::string timeseries_csv(const TimeSeries& series,
                                  const std::vector<double>& exact_column) {
  if (exact_column.size() != series.values.size())
    throw std::invalid_argument("timeseries_csv: column length mismatch");
  std::ostringstream os;
  os << "t_eVinv,probability,probability_exact\n";
  char buf[128];
  for (std::size_t k = 0; k < series.values.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g\n", series.time(k),
                  series.values[k], exact_column[k]);
    os << buf;
  }
  return os.str();
}

inline std::string spectrum_csv(const Spectrum& spectrum) {
  std::ostringstream os;
  os << "frequency_eV,amplitude\n";
  char buf[96];
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", spectrum.frequency(k),
                  spectrum.amplitude[k]);
    os << buf;
  }
  return os.str();
}

inline std::string peaks_csv(const std::vector<Peak>& peaks) {
  std::ostringstream os;
  os << "frequency_eV,frequency_err_eV,period_eVinv,period_err_eVinv\n";
  char buf[160];
  for (const auto& p : peaks) {
    // period error from the frequency error: d(1/f) = df / f^2
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g\n", p.frequency,
                  p.error, p.period, p.error / (p.frequency * p.frequency));
    os << buf;
  }
  return os.str();
}

}  // namespace qregsim
