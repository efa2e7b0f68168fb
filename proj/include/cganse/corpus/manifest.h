// cganse/corpus/manifest.h

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

#ifndef CGANSE_CORPUS_MANIFEST_H_
#define CGANSE_CORPUS_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

#include "cganse/corpus/noise.h"
#include "cganse/corpus/waveform.h"

namespace cganse {

// Partitions of the corpus. They mirror the four data sets of the original
// experiment: background speakers for the UBM, a disjoint speaker group for
// enhancer training, and enrollment/test sessions of the target speakers.
enum class Split { kUbm, kEnhancerTrain, kEnroll, kTest };

std::string SplitName(Split s);
std::optional<Split> ParseSplit(const std::string &name);

struct Condition {
  NoiseType noise_type = NoiseType::kWhite;
  double snr_db = 0.0;
};

struct ManifestEntry {
  std::string utterance_id;
  std::string speaker_id;
  int text_id = 0;
  int session_id = 0;
  Split split = Split::kUbm;
  // Relative paths are resolved against the manifest's directory.
  std::string file_path;
  std::optional<Condition> condition;  // empty for clean speech
  // For noisy entries: the clean source of the mixture.
  std::string clean_path;
};

class Manifest {
 public:
  std::vector<ManifestEntry> entries;
  // Directory used to resolve relative paths. Not serialised.
  std::string base_dir;

  // One JSON object per line.
  static Manifest Load(const std::string &path);
  void Save(const std::string &path) const;
  std::string ToJsonLines() const;
  static Manifest FromJsonLines(const std::string &text,
                                const std::string &base_dir);

  std::string Resolve(const std::string &file_path) const;
  Waveform LoadAudio(const ManifestEntry &e) const;
  Waveform LoadClean(const ManifestEntry &e) const;
  // Additive noise of a noisy entry, recovered as noisy - clean.
  Waveform LoadNoise(const ManifestEntry &e) const;

  std::vector<const ManifestEntry *> Select(Split split, bool noisy) const;

  // Throws if utterance ids repeat.
  void Validate() const;
};

}  // namespace cganse

#endif  // CGANSE_CORPUS_MANIFEST_H_
