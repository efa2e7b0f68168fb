// cganse/dsp/filterbank.h

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

#ifndef CGANSE_DSP_FILTERBANK_H_
#define CGANSE_DSP_FILTERBANK_H_

#include <vector>

#include <Eigen/Dense>

#include "cganse/dsp/stft.h"

namespace cganse::dsp {

double HzToMel(double hz);
double MelToHz(double mel);
// Equivalent rectangular bandwidth in Hz: 24.7 * (4.37 f / 1000 + 1).
double ErbHz(double hz);

// Gammatone filters sampled on the STFT bin grid.
struct FilterBank {
  std::vector<double> center_hz;
  // n_filters x n_bins magnitude responses, each peaking at 1.
  Eigen::MatrixXd response;

  int size() const { return static_cast<int>(center_hz.size()); }
};

struct GammatoneOptions {
  int n_filters = 64;
  double f_lo = 50.0;
  double f_hi = 8000.0;
  int sample_rate = kDefaultSampleRate;
  int nfft = kNfft;
};

// Centres equally spaced on the mel scale; 4th-order gammatone magnitude
// response |1 + j (f - fc) / b|^-4 with b = 1.019 ERB(fc).
FilterBank MelGammatoneBank(const GammatoneOptions &opts = {});

// T x n_filters energies e[t, j] = sum_f resp_j(f)^2 mag[f, t]^2.
Eigen::MatrixXd SubbandEnergies(const Spectrogram &spec, const FilterBank &bank);

// Per-bin gain from per-filter gains:
// g(f) = sum_j resp_j(f) m_j / sum_j resp_j(f). mask is T x n_filters,
// the result is n_bins x T.
Eigen::MatrixXd MaskToBins(const Eigen::MatrixXd &mask, const FilterBank &bank);

}  // namespace cganse::dsp

#endif  // CGANSE_DSP_FILTERBANK_H_
