// cganse/dnnse/features.h

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

#ifndef CGANSE_DNNSE_FEATURES_H_
#define CGANSE_DNNSE_FEATURES_H_

#include <Eigen/Dense>

#include "cganse/corpus/waveform.h"
#include "cganse/dsp/filterbank.h"
#include "cganse/dsp/mfcc.h"

namespace cganse::dnnse {

inline constexpr int kNumBands = 64;
inline constexpr int kContext = 2;  // frames on each side
inline constexpr double kLogFloor = 1e-10;

// Clean and noise subband energies on the same T x J grid.
struct TfEnergyPair {
  Eigen::MatrixXd clean_e;
  Eigen::MatrixXd noise_e;
};

// sqrt(clean / (clean + noise)), 0 where both are 0.
Eigen::MatrixXd Irm(const TfEnergyPair &pair);

// Gammatone energies of the padded STFT grid used by the enhancers.
Eigen::MatrixXd BandEnergies(const Waveform &w, const dsp::FilterBank &bank);
TfEnergyPair EnergyPair(const Waveform &clean, const Waveform &noise, const dsp::FilterBank &bank);

// Stacks rows t-context..t+context side by side, edges replicated.
Eigen::MatrixXd StackContext(const Eigen::MatrixXd &frames, int context);

// Per frame [57 MFCC | 64 log gammatone energies | their delta | delta-delta]
// (249 dims) stacked over +-2 frames: 1245 dims. Frame grid = StftPadded.
dsp::FeatureMatrix ExtractFeatures(const Waveform &w, const dsp::FilterBank &bank);
int FeatureDim(int context = kContext);

// Interpolates a T x J band mask to the STFT bins, scales the noisy
// magnitude and resynthesises with the noisy phase; output has w's length.
Waveform ApplyBandMask(const Waveform &w, const Eigen::MatrixXd &mask, const dsp::FilterBank &bank);

}  // namespace cganse::dnnse

#endif  // CGANSE_DNNSE_FEATURES_H_
