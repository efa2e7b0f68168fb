// src/dsp/stft.cc

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

#include "cganse/dsp/stft.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cganse/dsp/fft.h"

namespace cganse::dsp {

std::vector<double> HammingWindow(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / n);
  return w;
}

int NumFrames(std::size_t n, int nfft, int hop) {
  if (n < static_cast<std::size_t>(nfft)) return 0;
  return static_cast<int>((n - nfft) / hop) + 1;
}

Spectrogram Stft(const Waveform &w) {
  if (w.sample_rate != kDefaultSampleRate)
    throw std::invalid_argument("stft: expected a 16 kHz signal");
  if (w.size() < static_cast<std::size_t>(kNfft))
    throw std::invalid_argument("stft: signal shorter than one frame");
  const int frames = NumFrames(w.size());
  const std::vector<double> win = HammingWindow(kNfft);
  const RealFft fft(kNfft);

  Spectrogram spec;
  spec.sample_rate = w.sample_rate;
  spec.mag.resize(kNumBins, frames);
  spec.phase.resize(kNumBins, frames);
  std::vector<double> frame(kNfft);
  std::vector<std::complex<double>> bins;
  for (int t = 0; t < frames; ++t) {
    const std::size_t off = static_cast<std::size_t>(t) * kHop;
    for (int i = 0; i < kNfft; ++i) frame[i] = w.samples[off + i] * win[i];
    fft.Forward(frame, &bins);
    for (int f = 0; f < kNumBins; ++f) {
      spec.mag(f, t) = std::abs(bins[f]);
      double ph = std::arg(bins[f]);
      // atan2 returns -pi for a negative real part with a -0 imaginary part.
      if (ph <= -std::numbers::pi) ph = std::numbers::pi;
      spec.phase(f, t) = ph;
    }
  }
  return spec;
}

Waveform Istft(const Spectrogram &spec) {
  if (spec.nfft != kNfft || spec.hop != kHop || spec.bins() != kNumBins)
    throw std::invalid_argument("istft: unsupported transform parameters");
  if (spec.phase.rows() != spec.mag.rows() || spec.phase.cols() != spec.mag.cols())
    throw std::invalid_argument("istft: magnitude/phase shape mismatch");
  const int frames = spec.frames();
  Waveform out;
  out.sample_rate = spec.sample_rate;
  if (frames == 0) return out;
  const std::size_t len = static_cast<std::size_t>(frames - 1) * kHop + kNfft;
  out.samples.assign(len, 0.0);
  std::vector<double> env(len, 0.0);
  const std::vector<double> win = HammingWindow(kNfft);
  const RealFft fft(kNfft);

  std::vector<std::complex<double>> bins(kNumBins);
  std::vector<double> frame;
  for (int t = 0; t < frames; ++t) {
    for (int f = 0; f < kNumBins; ++f)
      bins[f] = std::polar(spec.mag(f, t), spec.phase(f, t));
    // DC and Nyquist bins of a real signal are real.
    bins[0] = {bins[0].real(), 0.0};
    bins[kNumBins - 1] = {bins[kNumBins - 1].real(), 0.0};
    fft.Inverse(bins, &frame);
    const std::size_t off = static_cast<std::size_t>(t) * kHop;
    for (int i = 0; i < kNfft; ++i) {
      out.samples[off + i] += frame[i] / kNfft * win[i];
      env[off + i] += win[i] * win[i];
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (!(env[i] > 1e-12)) throw std::logic_error("istft: zero window energy");
    out.samples[i] /= env[i];
  }
  return out;
}

Spectrogram StftPadded(const Waveform &w) {
  std::size_t n = w.size();
  std::size_t padded = kNfft;
  if (n > static_cast<std::size_t>(kNfft))
    padded = kNfft + (n - kNfft + kHop - 1) / kHop * kHop;
  if (padded == n) return Stft(w);
  Waveform p = w;
  p.samples.resize(padded, 0.0);
  return Stft(p);
}

Waveform IstftToLength(const Spectrogram &spec, std::size_t length) {
  Waveform out = Istft(spec);
  out.samples.resize(length, 0.0);
  return out;
}

}  // namespace cganse::dsp
