// cganse/dsp/stft.h

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

#ifndef CGANSE_DSP_STFT_H_
#define CGANSE_DSP_STFT_H_

#include <vector>

#include <Eigen/Dense>

#include "cganse/corpus/waveform.h"

namespace cganse::dsp {

inline constexpr int kNfft = 512;
inline constexpr int kHop = 256;
inline constexpr int kNumBins = kNfft / 2 + 1;

// Complex STFT in polar form. mag and phase are F x T (bins x frames).
struct Spectrogram {
  Eigen::MatrixXd mag;
  Eigen::MatrixXd phase;
  int sample_rate = kDefaultSampleRate;
  int nfft = kNfft;
  int hop = kHop;

  int bins() const { return static_cast<int>(mag.rows()); }
  int frames() const { return static_cast<int>(mag.cols()); }
  double BinHz() const { return static_cast<double>(sample_rate) / nfft; }
};

// Periodic Hamming window of length n.
std::vector<double> HammingWindow(int n);

// Frame count for an n-sample signal: floor((n - nfft)/hop) + 1.
int NumFrames(std::size_t n, int nfft = kNfft, int hop = kHop);

// 512-point STFT, periodic Hamming window, 256-sample hop, no centring.
// Requires a 16 kHz signal of at least nfft samples.
Spectrogram Stft(const Waveform &w);

// Weighted overlap-add inverse; output length (T-1)*hop + nfft.
Waveform Istft(const Spectrogram &spec);

// Stft after zero-padding the end so every input sample is covered by a
// frame. Used by the enhancers so that Istft + trim returns the input length.
Spectrogram StftPadded(const Waveform &w);

// Istft trimmed (or zero-extended) to `length` samples.
Waveform IstftToLength(const Spectrogram &spec, std::size_t length);

}  // namespace cganse::dsp

#endif  // CGANSE_DSP_STFT_H_
