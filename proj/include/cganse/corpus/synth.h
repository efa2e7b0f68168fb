// cganse/corpus/synth.h

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

#ifndef CGANSE_CORPUS_SYNTH_H_
#define CGANSE_CORPUS_SYNTH_H_

#include <cstdint>
#include <string>

#include "cganse/corpus/manifest.h"
#include "cganse/corpus/waveform.h"

namespace cganse {

// Per-speaker voice parameters of the synthetic talker.
struct SpeakerVoice {
  double f0_hz = 120.0;          // base pitch
  double formant_scale = 1.0;    // vocal-tract length factor
  double breathiness = 0.02;     // aspiration noise level
  double glottal_pole = 0.95;    // source spectral tilt
  double vibrato_rate_hz = 4.0;
};

SpeakerVoice VoiceForSpeaker(int speaker_index, std::uint64_t corpus_seed);

// Leading stretch of every generated utterance that contains no voicing.
inline constexpr std::size_t kLeadingSilenceSamples = 1920;
inline constexpr std::size_t kMinUtteranceSamples = 19200;

// Renders one utterance of `text_id` by the given speaker. Deterministic in
// all arguments.
Waveform SynthesizeUtterance(const SpeakerVoice &voice, int text_id,
                             int session_id, std::uint64_t corpus_seed);

struct SynthOptions {
  int n_speakers = 6;
  int utterances_per_speaker = 9;
  std::uint64_t seed = 1;
  std::string out_dir;
};

// Writes WAV files under out_dir/wav and returns the manifest (not saved).
// Speakers are assigned round robin to the target, enhancer-train and UBM
// groups; target speakers read text 1 and their sessions 1, 4 and 7 go to the
// enrollment split, all other sessions to the test split.
Manifest SynthCorpus(const SynthOptions &opts);

}  // namespace cganse

#endif  // CGANSE_CORPUS_SYNTH_H_
