// cganse/metrics/report.h

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

#ifndef CGANSE_METRICS_REPORT_H_
#define CGANSE_METRICS_REPORT_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cganse/corpus/manifest.h"

namespace cganse::metrics {

using Enhancer = std::function<Waveform(const Waveform &)>;

struct FrontEnd {
  std::string name;
  Enhancer enhance;  // must be safe to call concurrently when jobs > 1
};

// One grid cell: metrics averaged over the utterances of a condition.
struct EvalCell {
  std::string front_end;
  std::string noise;
  double snr_db = 0;
  double stoi = 0, seg_snr = 0, lsd = 0;
  int utterances = 0;
};

struct EvalReport {
  // Ordered by front end (input order), noise name, then SNR.
  std::vector<EvalCell> cells;

  // Per (front_end, noise): arithmetic mean of its SNR cells (snr_db unused).
  std::vector<EvalCell> Means() const;
  std::string ToCsv() const;
  // One block per metric, rows front_end/noise, columns SNRs and "mean".
  std::string ToTable() const;
};

// Scores every noisy entry (optionally only those of `split`) under every
// front end against its clean source. Work is spread over `jobs` threads;
// the result does not depend on jobs.
EvalReport BuildReport(const Manifest &manifest, const std::vector<FrontEnd> &front_ends,
                       std::optional<Split> split = std::nullopt, int jobs = 1);

}  // namespace cganse::metrics

#endif  // CGANSE_METRICS_REPORT_H_
