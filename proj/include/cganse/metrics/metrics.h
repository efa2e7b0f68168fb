// cganse/metrics/metrics.h

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

#ifndef CGANSE_METRICS_METRICS_H_
#define CGANSE_METRICS_METRICS_H_

#include "cganse/corpus/waveform.h"

namespace cganse::metrics {

// Short-time objective intelligibility of `processed` against `clean`.
// Both are trimmed to the shorter length and resampled to 10 kHz. Throws
// std::invalid_argument when fewer than 30 active frames remain.
inline constexpr int kStoiRate = 10000;
inline constexpr int kStoiFrame = 256;
inline constexpr int kStoiNfft = 512;
inline constexpr int kStoiBands = 15;
inline constexpr double kStoiMinCenterHz = 150.0;
inline constexpr int kStoiSegment = 30;
inline constexpr double kStoiDynRangeDb = 40.0;
inline constexpr double kStoiBeta = -15.0;
double Stoi(const Waveform &clean, const Waveform &processed);

// Mean per-frame SNR over 32 ms frames (50% overlap), each clamped to
// [-10, 35] dB; frames more than 40 dB below the loudest clean frame skipped.
inline constexpr double kSegSnrMin = -10.0;
inline constexpr double kSegSnrMax = 35.0;
double SegSnr(const Waveform &clean, const Waveform &processed);

// RMS over active frames (either signal within 40 dB of its loudest frame)
// and all bins of 20 |log10((|C| + eps) / (|P| + eps))|.
inline constexpr double kLsdEps = 1e-8;
double Lsd(const Waveform &clean, const Waveform &processed);

}  // namespace cganse::metrics

#endif  // CGANSE_METRICS_METRICS_H_
