// cganse/dsp/mfcc.h

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

#ifndef CGANSE_DSP_MFCC_H_
#define CGANSE_DSP_MFCC_H_

#include <vector>

#include <Eigen/Dense>

#include "cganse/corpus/waveform.h"

namespace cganse::dsp {

enum class FeatureKind { kMfcc, kGammatoneEnergy, kDnnInput };

// T x D frame features plus frame centre times.
struct FeatureMatrix {
  Eigen::MatrixXd frames;
  FeatureKind kind = FeatureKind::kMfcc;
  std::vector<double> frame_times;

  int num_frames() const { return static_cast<int>(frames.rows()); }
  int dim() const { return static_cast<int>(frames.cols()); }
};

struct MfccOptions {
  int n_static = 19;       // includes C0
  bool with_deltas = true;  // appends delta and delta-delta
  int n_mel = 26;
  double preemph = 0.97;
  // When true the waveform is zero-padded like StftPadded so the frame grid
  // matches the enhancers' analysis grid.
  bool padded = false;
};

// Five-point regression delta with edge replication:
// d[t] = sum_{n=1,2} n (c[t+n] - c[t-n]) / 10.
Eigen::MatrixXd Deltas(const Eigen::MatrixXd &feats);

// Triangular mel filters over the bins of an nfft-point spectrum.
Eigen::MatrixXd MelTriangles(int n_mel, int nfft, int sample_rate);

// log mel energies -> DCT-II -> first n_static coefficients, optionally with
// deltas: 19 + 19 + 19 = 57 dims by default.
FeatureMatrix Mfcc(const Waveform &w, const MfccOptions &opts = {});

}  // namespace cganse::dsp

#endif  // CGANSE_DSP_MFCC_H_
