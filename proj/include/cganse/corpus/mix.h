// cganse/corpus/mix.h

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

#ifndef CGANSE_CORPUS_MIX_H_
#define CGANSE_CORPUS_MIX_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cganse/corpus/manifest.h"

namespace cganse {

struct MixOptions {
  NoiseType noise = NoiseType::kWhite;
  std::vector<double> snrs_db;
  std::uint64_t seed = 1;
  // Clean entries of these splits are mixed; the UBM split stays clean.
  std::vector<Split> splits = {Split::kEnhancerTrain, Split::kEnroll, Split::kTest};
};

// Extra noise beyond the utterance length, so the crop offset varies.
inline constexpr std::size_t kNoiseMarginSamples = 16000;

// Mixes every selected clean entry at every SNR, writes the mixtures under
// <base_dir>/mix/<noise>/ and returns the input manifest with the noisy
// entries appended (ids "<clean id>__<noise>_<snr>dB"). Each mixture draws
// its own noise from (seed, utterance id, SNR). Babble is built from six
// sources cycled out of the clean UBM speech (or all clean speech when the
// manifest has no UBM split).
Manifest MixManifest(const Manifest &manifest, const MixOptions &opts);

}  // namespace cganse

#endif  // CGANSE_CORPUS_MIX_H_
