/**
 * This code is part of qregsim.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qregsim/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace qregsim;
using Catch::Approx;

namespace {

TimeSeries cosine_series(double f, std::size_t n, double dt, double offset) {
  TimeSeries s;
  s.dt = dt;
  for (std::size_t k = 0; k < n; ++k)
    s.values.push_back(offset + 0.3 * std::cos(2.0 * M_PI * f * dt * k));
  return s;
}

}  // namespace

TEST_CASE("constant series has an empty positive spectrum") {
  TimeSeries s;
  s.dt = 0.1;
  s.values.assign(64, 0.75);
  const Spectrum spec = fourier_spectrum(s);
  for (std::size_t k = 1; k <= spec.size() / 2; ++k)
    CHECK(spec.amplitude[k] < 1e-10);
  CHECK(find_peaks(spec).empty());
}

TEST_CASE("a pure on-bin cosine gives a single peak at its frequency") {
  // f = 8 bins of a 128-point grid
  const double dt = 0.05;
  const double f = 8.0 / (128 * dt);
  const auto s = cosine_series(f, 128, dt, 0.6);
  const auto peaks = find_peaks(fourier_spectrum(s), 0.05);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks[0].frequency == Approx(f).margin(1e-12));
  CHECK(peaks[0].period == Approx(1.0 / f).margin(1e-12));
  CHECK(peaks[0].error == Approx(1.0 / (128 * dt)).margin(1e-15));
}

TEST_CASE("bin spacing matches the published error bars") {
  TimeSeries s;
  s.dt = 0.067;
  s.values.assign(400, 0.0);
  for (std::size_t k = 0; k < 400; ++k)
    s.values[k] = std::cos(0.4 * k);
  const Spectrum spec = fourier_spectrum(s);
  CHECK(spec.spacing == Approx(1.0 / (400 * 0.067)).epsilon(1e-12));
  CHECK(spec.spacing == Approx(0.0373).margin(0.0002));  // the +-0.04 row
  // 250 points give the +-0.06 rows
  TimeSeries s250;
  s250.dt = 0.067;
  s250.values.assign(250, 0.0);
  CHECK(fourier_spectrum(s250).spacing == Approx(0.0597).margin(0.0002));
}

TEST_CASE("mean subtraction empties the zero-frequency bin") {
  const auto s = cosine_series(0.9, 100, 0.067, 5.0);
  const Spectrum spec = fourier_spectrum(s);
  CHECK(spec.amplitude[0] < 1e-9);
  for (const auto& p : find_peaks(spec)) CHECK(p.frequency > 0.0);
}

TEST_CASE("period times frequency is exactly one") {
  const auto s = cosine_series(1.3, 200, 0.05, 0.4);
  for (const auto& p : find_peaks(fourier_spectrum(s), 0.01))
    CHECK(p.frequency * p.period == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("amplitudes are symmetric about zero frequency for real input") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TimeSeries s;
  s.dt = 0.08;
  for (int k = 0; k < 101; ++k) s.values.push_back(u(gen));
  const Spectrum spec = fourier_spectrum(s);
  const std::size_t n = spec.size();
  for (std::size_t k = 1; k < n; ++k)
    CHECK(spec.amplitude[k] == Approx(spec.amplitude[n - k]).margin(1e-9));
}

TEST_CASE("zero padding refines the grid without moving a peak") {
  const double dt = 0.067;
  const double f = 1.79;
  const auto s = cosine_series(f, 250, dt, 0.5);
  const auto fine = fourier_spectrum(s, 4);
  CHECK(fine.spacing == Approx(1.0 / (4 * 250 * dt)).epsilon(1e-12));
  const auto peaks = find_peaks(fine, 0.5);
  REQUIRE_FALSE(peaks.empty());
  CHECK(peaks[0].frequency == Approx(f).margin(2 * fine.spacing));
}

TEST_CASE("shot noise converges towards the exact spectrum") {
  const double dt = 0.067;
  const auto exact = cosine_series(1.1, 200, dt, 0.5);
  std::mt19937_64 gen(11);
  auto noisy = [&](long long shots) {
    TimeSeries s = exact;
    for (auto& v : s.values) {
      std::binomial_distribution<long long> bin(shots, std::min(1.0, std::max(0.0, v)));
      v = double(bin(gen)) / double(shots);
    }
    return s;
  };
  const Spectrum se = fourier_spectrum(exact);
  auto dist = [&](const Spectrum& sp) {
    double d = 0.0;
    for (std::size_t k = 0; k < sp.size(); ++k)
      d += std::abs(sp.amplitude[k] - se.amplitude[k]);
    return d;
  };
  const double d1 = dist(fourier_spectrum(noisy(1000)));
  const double d2 = dist(fourier_spectrum(noisy(100000)));
  CHECK(d2 < d1);
}

TEST_CASE("input validation") {
  TimeSeries s;
  s.dt = 0.1;
  s.values = {1.0};
  CHECK_THROWS_AS(fourier_spectrum(s), std::invalid_argument);
  s.values = {1.0, 2.0};
  s.dt = 0.0;
  CHECK_THROWS_AS(fourier_spectrum(s), std::invalid_argument);
  s.dt = 0.1;
  CHECK_THROWS_AS(fourier_spectrum(s, 0), std::invalid_argument);
  Spectrum empty;
  CHECK_THROWS_AS(find_peaks(empty), std::invalid_argument);
  const Spectrum ok = fourier_spectrum(s);
  CHECK_THROWS_AS(find_peaks(ok, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(find_peaks(ok, 1.0), std::invalid_argument);
}
