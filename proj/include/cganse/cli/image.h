// cganse/cli/image.h

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

#ifndef CGANSE_CLI_IMAGE_H_
#define CGANSE_CLI_IMAGE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cganse/corpus/waveform.h"

namespace cganse::cli {

struct GrayImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

inline constexpr double kSpecgramRangeDb = 80.0;

// Log-magnitude STFT, one column per frame and one row per bin below
// Nyquist (256 rows), low frequencies at the bottom. The top kSpecgramRangeDb
// below the loudest bin map linearly onto 0..255; a silent input is black.
GrayImage SpectrogramImage(const Waveform &w);

// Binary PGM (P5).
std::string EncodePgm(const GrayImage &img);

bool PngAvailable();
// Throws std::runtime_error when built without libpng.
std::string EncodePng(const GrayImage &img);

// .png goes through EncodePng, anything else is written as PGM.
void WriteImage(const std::string &path, const GrayImage &img);

}  // namespace cganse::cli

#endif  // CGANSE_CLI_IMAGE_H_
