// src/dsp/mfcc.cc

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

#include "cganse/dsp/mfcc.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cganse/dsp/filterbank.h"
#include "cganse/dsp/stft.h"

namespace cganse::dsp {

Eigen::MatrixXd Deltas(const Eigen::MatrixXd &feats) {
  const Eigen::Index T = feats.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(T, feats.cols());
  auto row = [&](Eigen::Index t) { return feats.row(std::clamp<Eigen::Index>(t, 0, T - 1)); };
  for (Eigen::Index t = 0; t < T; ++t)
    d.row(t) = ((row(t + 1) - row(t - 1)) + 2.0 * (row(t + 2) - row(t - 2))) / 10.0;
  return d;
}

Eigen::MatrixXd MelTriangles(int n_mel, int nfft, int sample_rate) {
  const int n_bins = nfft / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate) / nfft;
  const double mel_hi = HzToMel(sample_rate / 2.0);
  std::vector<double> edges(n_mel + 2);
  for (int i = 0; i < n_mel + 2; ++i) edges[i] = MelToHz(mel_hi * i / (n_mel + 1));
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(n_mel, n_bins);
  for (int m = 0; m < n_mel; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      const double f = k * bin_hz;
      if (f > lo && f <= mid) tri(m, k) = (f - lo) / (mid - lo);
      else if (f > mid && f < hi) tri(m, k) = (hi - f) / (hi - mid);
    }
  }
  return tri;
}

FeatureMatrix Mfcc(const Waveform &w, const MfccOptions &opts) {
  if (w.sample_rate != kDefaultSampleRate)
    throw std::invalid_argument("mfcc: expected a 16 kHz signal");
  if (w.size() < static_cast<std::size_t>(kNfft))
    throw std::invalid_argument("mfcc: signal shorter than one frame");
  if (opts.n_static < 1 || opts.n_static > opts.n_mel)
    throw std::invalid_argument("mfcc: n_static must be in [1, n_mel]");

  // Pre-emphasis with the first sample treated as its own predecessor.
  Waveform pre = w;
  for (std::size_t n = pre.size(); n-- > 1;)
    pre.samples[n] = w.samples[n] - opts.preemph * w.samples[n - 1];
  pre.samples[0] = w.samples[0] - opts.preemph * w.samples[0];

  const Spectrogram spec = opts.padded ? StftPadded(pre) : Stft(pre);
  static thread_local Eigen::MatrixXd tri;
  static thread_local int tri_key = -1;
  if (tri_key != opts.n_mel) {
    tri = MelTriangles(opts.n_mel, kNfft, kDefaultSampleRate);
    tri_key = opts.n_mel;
  }
  Eigen::MatrixXd mel = (tri * spec.mag.array().square().matrix()).transpose();  // T x M
  mel = mel.unaryExpr([](double e) { return std::log(std::max(e, 1e-10)); });

  const int M = opts.n_mel;
  Eigen::MatrixXd dct(M, opts.n_static);
  for (int k = 0; k < opts.n_static; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / M);
    for (int m = 0; m < M; ++m)
      dct(m, k) = scale * std::cos(std::numbers::pi * k * (m + 0.5) / M);
  }
  Eigen::MatrixXd statics = mel * dct;

  FeatureMatrix out;
  out.kind = FeatureKind::kMfcc;
  if (opts.with_deltas) {
    Eigen::MatrixXd d1 = Deltas(statics);
    Eigen::MatrixXd d2 = Deltas(d1);
    out.frames.resize(statics.rows(), 3 * opts.n_static);
    out.frames << statics, d1, d2;
  } else {
    out.frames = std::move(statics);
  }
  out.frame_times.resize(out.frames.rows());
  for (Eigen::Index t = 0; t < out.frames.rows(); ++t)
    out.frame_times[t] = (t * kHop + kNfft / 2.0) / kDefaultSampleRate;
  return out;
}

}  // namespace cganse::dsp
