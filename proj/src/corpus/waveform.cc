// src/corpus/waveform.cc

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

#include "cganse/corpus/waveform.h"

#include <cmath>
#include <stdexcept>

namespace cganse {

double MeanPower(const Waveform &w) {
  if (w.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : w.samples) acc += s * s;
  return acc / static_cast<double>(w.samples.size());
}

double Rms(const Waveform &w) { return std::sqrt(MeanPower(w)); }

void ValidateWaveform(const Waveform &w) {
  if (w.sample_rate <= 0)
    throw std::invalid_argument("waveform: sample rate must be positive");
  for (double s : w.samples)
    if (!std::isfinite(s))
      throw std::invalid_argument("waveform: non-finite sample");
}

}  // namespace cganse
