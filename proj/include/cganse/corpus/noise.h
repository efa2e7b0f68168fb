// cganse/corpus/noise.h

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

#ifndef CGANSE_CORPUS_NOISE_H_
#define CGANSE_CORPUS_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cganse/corpus/waveform.h"

namespace cganse {

enum class NoiseType { kBabble, kWhite, kCantineLike, kMarketLike, kAirplaneLike };

inline constexpr NoiseType kAllNoiseTypes[] = {
    NoiseType::kAirplaneLike, NoiseType::kBabble, NoiseType::kCantineLike,
    NoiseType::kMarketLike, NoiseType::kWhite};

// Names used in manifests and on the command line: babble, white,
// cantine_like, market_like, airplane_like.
std::string NoiseTypeName(NoiseType t);
std::optional<NoiseType> ParseNoiseType(std::string_view name);

struct MixSpec {
  NoiseType noise_type = NoiseType::kWhite;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
};

// I.i.d. N(0, 1) samples, deterministic in seed.
Waveform WhiteNoise(std::size_t length, std::uint64_t seed,
                    int sample_rate = kDefaultSampleRate);

// Low-pass filtered Gaussian noise with a per-type spectral tilt and slow
// amplitude modulation, normalised to unit RMS. Stands in for the recorded
// cantine/market/airplane noises. kWhite is accepted and returns WhiteNoise;
// kBabble is rejected (babble needs speech sources, see MakeBabble).
Waveform ColoredNoise(NoiseType type, std::size_t length, std::uint64_t seed,
                      int sample_rate = kDefaultSampleRate);

// Sum of exactly six speech sources, each cropped at a seeded random offset
// to `length` samples, renormalised to unit RMS.
Waveform MakeBabble(std::span<const Waveform> sources, std::size_t length,
                    std::uint64_t seed);

// clean + g * crop(noise) with g chosen so that the full-utterance power
// ratio equals snr_db. The crop offset is drawn from `seed`.
Waveform MixAtSnr(const Waveform &clean, const Waveform &noise, double snr_db,
                  std::uint64_t seed);

// The scaled noise crop that MixAtSnr adds; exposed so callers can keep the
// noise component (needed for ideal-ratio-mask targets).
Waveform ScaledNoiseFor(const Waveform &clean, const Waveform &noise,
                        double snr_db, std::uint64_t seed);

}  // namespace cganse

#endif  // CGANSE_CORPUS_NOISE_H_
