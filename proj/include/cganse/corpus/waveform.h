// cganse/corpus/waveform.h

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

#ifndef CGANSE_CORPUS_WAVEFORM_H_
#define CGANSE_CORPUS_WAVEFORM_H_

#include <cstddef>
#include <vector>

namespace cganse {

inline constexpr int kDefaultSampleRate = 16000;

// Mono time-domain signal. Amplitudes are nominally in [-1, 1]; processing
// stages may exceed that range and clamping happens only in SaveWav.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = kDefaultSampleRate;

  Waveform() = default;
  explicit Waveform(std::vector<double> s, int rate = kDefaultSampleRate)
      : samples(std::move(s)), sample_rate(rate) {}

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double Duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Mean square over the whole signal.
double MeanPower(const Waveform &w);
double Rms(const Waveform &w);

// Throws std::invalid_argument if the rate is non-positive or any sample is
// not finite.
void ValidateWaveform(const Waveform &w);

}  // namespace cganse

#endif  // CGANSE_CORPUS_WAVEFORM_H_
