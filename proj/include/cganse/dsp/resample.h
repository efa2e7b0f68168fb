// cganse/dsp/resample.h

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

#ifndef CGANSE_DSP_RESAMPLE_H_
#define CGANSE_DSP_RESAMPLE_H_

#include "cganse/corpus/waveform.h"

namespace cganse::dsp {

// Rational-ratio resampling with a Kaiser-windowed sinc low-pass (cutoff at
// the lower Nyquist frequency). Output length is ceil(n * out_rate / in_rate).
Waveform Resample(const Waveform &w, int out_rate);

}  // namespace cganse::dsp

#endif  // CGANSE_DSP_RESAMPLE_H_
