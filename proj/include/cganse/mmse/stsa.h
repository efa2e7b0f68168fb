// cganse/mmse/stsa.h

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

#ifndef CGANSE_MMSE_STSA_H_
#define CGANSE_MMSE_STSA_H_

#include <deque>

#include <Eigen/Dense>

#include "cganse/corpus/waveform.h"

namespace cganse::mmse {

// Exponentially scaled modified Bessel functions e^-x I0(x), e^-x I1(x) for
// x >= 0. Power series below kBesselSwitch, Hankel asymptotic series above.
inline constexpr double kBesselSwitch = 15.0;
double BesselI0Scaled(double x);
double BesselI1Scaled(double x);

inline constexpr double kGainCap = 10.0;

struct MmseConfig {
  double alpha = 0.98;           // decision-directed smoothing
  double xi_min_db = -25.0;      // a priori SNR floor
  double gain_cap = kGainCap;
  double psd_floor = 1e-10;
  int init_samples = 1000;       // assumed speech-free lead-in
  // Noise tracker.
  double tracker_beta = 0.8;
  double safety_window_sec = 1.5;
  double periodogram_smoothing = 0.8;  // for the safety-net minimum
  double xi_h1_db = 15.0;              // fixed a priori SNR under speech presence
  double spp_smoothing = 0.9;
};

// STSA-MMSE gain for a priori SNR xi and a posteriori SNR gamma (both > 0):
// G = sqrt(pi)/2 * sqrt(v)/gamma * exp(-v/2) [(1+v) I0(v/2) + v I1(v/2)],
// v = xi gamma / (1 + xi), capped at `cap` (large when gamma -> 0).
double StsaGain(double xi, double gamma, double cap = kGainCap);

struct MmseState {
  Eigen::VectorXd noise_psd;
  Eigen::VectorXd prev_gain;
  Eigen::VectorXd prev_gamma;
  double alpha = 0.98;
};

// Average periodogram |X|^2 of the STFT frames that lie entirely inside the
// first init_samples samples, floored at psd_floor.
Eigen::VectorXd InitNoisePsd(const Waveform &w, const MmseConfig &cfg = {});

// xi = alpha G_prev^2 gamma_prev + (1 - alpha) max(gamma - 1, 0), floored.
Eigen::VectorXd DecisionDirectedXi(const MmseState &state, const Eigen::VectorXd &gamma,
                                   double xi_min);

// Speech-presence weighted recursive noise PSD estimator with a
// minimum-statistics safety net over the last safety_window_sec.
class NoisePsdTracker {
 public:
  NoisePsdTracker(Eigen::VectorXd initial, const MmseConfig &cfg, double frame_rate_hz);

  const Eigen::VectorXd &Update(const Eigen::VectorXd &periodogram);
  const Eigen::VectorXd &psd() const { return psd_; }

 private:
  MmseConfig cfg_;
  Eigen::VectorXd psd_;
  Eigen::VectorXd spp_mean_;
  Eigen::VectorXd smoothed_;
  std::deque<Eigen::VectorXd> history_;
  std::size_t window_frames_;
  bool have_smoothed_ = false;
};

struct MmseResult {
  Waveform enhanced;
  Eigen::MatrixXd gains;      // bins x frames
  Eigen::MatrixXd noise_psd;  // bins x frames
};

MmseResult EnhanceMmseDetailed(const Waveform &w, const MmseConfig &cfg = {});
// Output has the input's length.
Waveform EnhanceMmse(const Waveform &w, const MmseConfig &cfg = {});

}  // namespace cganse::mmse

#endif  // CGANSE_MMSE_STSA_H_
