// cganse/asv/protocol.h

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

#ifndef CGANSE_ASV_PROTOCOL_H_
#define CGANSE_ASV_PROTOCOL_H_

#include <optional>
#include <string>
#include <vector>

#include "cganse/asv/gmm.h"
#include "cganse/corpus/manifest.h"
#include "cganse/dsp/mfcc.h"
#include "cganse/metrics/report.h"

namespace cganse::asv {

// Clean: speaker models from enhanced clean enrollment only.
// Multi: per noise type, models from enhanced clean plus enhanced noisy
// enrollment of that noise (all SNRs present in the manifest).
enum class Protocol { kClean, kMulti };
std::string ProtocolName(Protocol p);
std::optional<Protocol> ParseProtocol(const std::string &name);

struct AsvConfig {
  int components = 64;
  EmOptions em;
  double relevance = kDefaultRelevance;
  bool mean_norm = true;  // per-utterance cepstral mean subtraction
  Protocol protocol = Protocol::kClean;
};

// 57-dim MFCC (19 static incl. C0 plus deltas), optionally mean-normalised.
Eigen::MatrixXd AsvFeatures(const Waveform &w, bool mean_norm);

struct Trial {
  std::string id;  // "<test utterance>:<claimed speaker>"
  bool target = false;
  double score = 0;
};

// One cell of the EER grid; clean test speech has no SNR.
struct EerCell {
  std::string noise;
  std::optional<double> snr_db;
  double eer = 0;
  std::vector<Trial> trials;
};

struct EerTable {
  Protocol protocol = Protocol::kClean;
  // Grouped by noise name; within a row the SNR cells ascend, then clean.
  std::vector<EerCell> cells;

  // Mean over a row's SNR cells (the clean column is excluded).
  double RowMean(const std::string &noise) const;
  std::vector<std::string> Noises() const;
  // Columns: noise, snr ("clean" or "mean" for those columns), eer.
  std::string ToCsv() const;
  std::string ToTable() const;
  // "trial_id target|impostor score" lines, cells in order.
  std::string ScoreLines() const;
};

// Trains the UBM on enhanced UBM-split speech, enrolls every speaker of the
// enroll split, and scores all same-text trials of the test split against
// every model: one EER cell per (noise, SNR) plus a clean column per noise.
EerTable RunProtocol(const Manifest &manifest, const metrics::Enhancer &enhance,
                     const AsvConfig &cfg, int jobs = 1);

}  // namespace cganse::asv

#endif  // CGANSE_ASV_PROTOCOL_H_
