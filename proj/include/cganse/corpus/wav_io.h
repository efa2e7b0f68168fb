// cganse/corpus/wav_io.h

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

#ifndef CGANSE_CORPUS_WAV_IO_H_
#define CGANSE_CORPUS_WAV_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cganse/corpus/waveform.h"

namespace cganse {

struct WavReadOptions {
  int expected_rate = kDefaultSampleRate;
  // When false, files at any other rate are rejected. When true they are
  // resampled to expected_rate.
  bool allow_resample = false;
};

// Reads a RIFF/WAVE mono PCM16 file. Integer samples are scaled by 1/32768.
Waveform LoadWav(const std::string &path, const WavReadOptions &opts = {});

// Writes a mono PCM16 file. Samples are clamped to [-1, 1] and rounded.
void SaveWav(const std::string &path, const Waveform &w);

// In-memory variants; used by the file functions and by tests.
Waveform DecodeWav(const std::vector<std::uint8_t> &bytes,
                   const WavReadOptions &opts = {});
std::vector<std::uint8_t> EncodeWav(const Waveform &w);

std::int16_t ToPcm16(double amplitude);

}  // namespace cganse

#endif  // CGANSE_CORPUS_WAV_IO_H_
