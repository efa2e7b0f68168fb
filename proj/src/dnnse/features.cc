// src/dnnse/features.cc

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

#include "cganse/dnnse/features.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cganse/dsp/stft.h"

namespace cganse::dnnse {

Eigen::MatrixXd Irm(const TfEnergyPair &pair) {
  const auto &c = pair.clean_e, &n = pair.noise_e;
  if (c.rows() != n.rows() || c.cols() != n.cols())
    throw std::invalid_argument("Irm: clean/noise energy shape mismatch");
  Eigen::MatrixXd m(c.rows(), c.cols());
  for (Eigen::Index t = 0; t < c.rows(); ++t)
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (c(t, j) < 0 || n(t, j) < 0) throw std::invalid_argument("Irm: negative energy");
      double s = c(t, j) + n(t, j);
      m(t, j) = s > 0 ? std::sqrt(c(t, j) / s) : 0.0;
    }
  return m;
}

Eigen::MatrixXd BandEnergies(const Waveform &w, const dsp::FilterBank &bank) {
  return dsp::SubbandEnergies(dsp::StftPadded(w), bank);
}

TfEnergyPair EnergyPair(const Waveform &clean, const Waveform &noise, const dsp::FilterBank &bank) {
  if (clean.size() != noise.size()) throw std::invalid_argument("EnergyPair: length mismatch");
  return {BandEnergies(clean, bank), BandEnergies(noise, bank)};
}

Eigen::MatrixXd StackContext(const Eigen::MatrixXd &frames, int context) {
  const Eigen::Index t_count = frames.rows(), d = frames.cols();
  const int width = 2 * context + 1;
  Eigen::MatrixXd out(t_count, d * width);
  for (Eigen::Index t = 0; t < t_count; ++t)
    for (int k = -context; k <= context; ++k) {
      Eigen::Index src = std::clamp<Eigen::Index>(t + k, 0, t_count - 1);
      out.block(t, (k + context) * d, 1, d) = frames.row(src);
    }
  return out;
}

int FeatureDim(int context) { return (2 * context + 1) * (57 + 3 * kNumBands); }

dsp::FeatureMatrix ExtractFeatures(const Waveform &w, const dsp::FilterBank &bank) {
  if (bank.size() != kNumBands)
    throw std::invalid_argument("ExtractFeatures: expected a 64-band filter bank");
  dsp::MfccOptions mo;
  mo.padded = true;
  dsp::FeatureMatrix mfcc = dsp::Mfcc(w, mo);
  Eigen::MatrixXd loge = BandEnergies(w, bank).array().max(kLogFloor).log().matrix();
  if (loge.rows() != mfcc.frames.rows())
    throw std::logic_error("ExtractFeatures: MFCC and gammatone frame grids differ");
  Eigen::MatrixXd d1 = dsp::Deltas(loge), d2 = dsp::Deltas(d1);
  Eigen::MatrixXd base(loge.rows(), mfcc.frames.cols() + 3 * kNumBands);
  base << mfcc.frames, loge, d1, d2;
  dsp::FeatureMatrix out;
  out.kind = dsp::FeatureKind::kDnnInput;
  out.frames = StackContext(base, kContext);
  out.frame_times = mfcc.frame_times;
  return out;
}

Waveform ApplyBandMask(const Waveform &w, const Eigen::MatrixXd &mask, const dsp::FilterBank &bank) {
  dsp::Spectrogram spec = dsp::StftPadded(w);
  if (mask.rows() != spec.frames())
    throw std::invalid_argument("ApplyBandMask: mask has " + std::to_string(mask.rows()) +
                                " frames, spectrogram " + std::to_string(spec.frames()));
  spec.mag.array() *= dsp::MaskToBins(mask, bank).array();
  return dsp::IstftToLength(spec, w.size());
}

}  // namespace cganse::dnnse
