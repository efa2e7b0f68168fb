// src/dsp/resample.cc

// Copyright 2026  cganse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cganse/dsp/resample.h"

#include <cmath>
#include <numeric>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cganse::dsp {

namespace {

constexpr int kZeroCrossings = 16;
constexpr double kKaiserBeta = 8.0;
constexpr double kRolloff = 0.95;

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

Waveform Resample(const Waveform &w, int out_rate) {
  const int in_rate = w.sample_rate;
  if (in_rate <= 0 || out_rate <= 0) throw std::invalid_argument("resample: bad rate");
  if (in_rate == out_rate) return w;
  const int g = std::gcd(in_rate, out_rate);
  const long up = out_rate / g;   // L
  const long down = in_rate / g;  // M

  // Cutoff in cycles per input sample.
  const double ratio = std::min(1.0, static_cast<double>(out_rate) / in_rate);
  const double cutoff = 0.5 * ratio * kRolloff;
  const double half_width = kZeroCrossings / ratio;  // in input samples
  const int taps = 2 * static_cast<int>(std::ceil(half_width)) + 1;
  const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);

  // table[p][k]: weight of input sample (base - taps/2 + k) for phase p/L.
  std::vector<std::vector<double>> table(up, std::vector<double>(taps));
  for (long p = 0; p < up; ++p) {
    const double frac = static_cast<double>(p) / up;
    for (int k = 0; k < taps; ++k) {
      const double tau = frac - (k - taps / 2);
      double x = tau / half_width;
      double win = 0.0;
      if (std::abs(x) < 1.0)
        win = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - x * x)) / i0_beta;
      table[p][k] = 2.0 * cutoff * Sinc(2.0 * cutoff * tau) * win;
    }
  }

  const long n_in = static_cast<long>(w.size());
  const long n_out = (n_in * up + down - 1) / down;
  Waveform out;
  out.sample_rate = out_rate;
  out.samples.assign(static_cast<std::size_t>(n_out), 0.0);
  for (long j = 0; j < n_out; ++j) {
    const long num = j * down;
    const long base = num / up;
    const long phase = num % up;
    const auto &h = table[phase];
    double acc = 0.0;
    for (int k = 0; k < taps; ++k) {
      long idx = base - taps / 2 + k;
      if (idx < 0 || idx >= n_in) continue;
      acc += h[k] * w.samples[idx];
    }
    out.samples[j] = acc;
  }
  return out;
}

}  // namespace cganse::dsp
