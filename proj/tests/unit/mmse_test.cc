// tests/unit/mmse_test.cc

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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"

#include "cganse/corpus/noise.h"
#include "cganse/corpus/synth.h"
#include "cganse/dsp/stft.h"
#include "cganse/mmse/stsa.h"
#include "unit/test_util.h"

namespace cganse::mmse {
namespace {

using boost::math::quadrature::gauss_kronrod;

// E[A | R] / R for a complex Gaussian speech coefficient of variance xi in
// unit-variance complex Gaussian noise with |Y|^2 = gamma. Both the phase and
// amplitude integrals are done numerically; a common exp(-lambda R^2) factor
// is pulled out so nothing overflows.
double QuadratureGain(double xi, double gamma) {
  const double r = std::sqrt(gamma);
  const double lambda = 1.0 / (1.0 / xi + 1.0);
  const double peak = lambda * r * r;
  auto phase_integral = [&](double a) {
    auto f = [&](double th) {
      return std::exp(-a * a / lambda + 2.0 * a * r * std::cos(th) - peak);
    };
    return gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi, 15, 1e-14);
  };
  const double upper = lambda * r + 40.0 * std::sqrt(lambda);
  double num = gauss_kronrod<double, 61>::integrate(
      [&](double a) { return a * a * phase_integral(a); }, 0.0, upper, 15, 1e-13);
  double den = gauss_kronrod<double, 61>::integrate(
      [&](double a) { return a * phase_integral(a); }, 0.0, upper, 15, 1e-13);
  return num / den / r;
}

double Db(double x) { return 10.0 * std::log10(x); }

Waveform Concat(const Waveform &a, const Waveform &b) {
  Waveform out = a;
  out.samples.insert(out.samples.end(), b.samples.begin(), b.samples.end());
  return out;
}

Waveform Scaled(Waveform w, double g) {
  for (double &s : w.samples) s *= g;
  return w;
}

double HammingEnergy() {
  double e = 0.0;
  for (double v : dsp::HammingWindow(dsp::kNfft)) e += v * v;
  return e;
}

// Runs the tracker over the frames of w, initialised from its first 1000
// samples; returns the estimate after each frame.
std::vector<Eigen::VectorXd> Track(const Waveform &w) {
  MmseConfig cfg;
  NoisePsdTracker tracker(InitNoisePsd(w, cfg), cfg, 16000.0 / dsp::kHop);
  dsp::Spectrogram s = dsp::Stft(w);
  std::vector<Eigen::VectorXd> out;
  for (int t = 0; t < s.frames(); ++t)
    out.push_back(tracker.Update(s.mag.col(t).array().square().matrix()));
  return out;
}

double MedianAbsDbError(const Eigen::VectorXd &est, double truth, int lo = 1, int hi = 256) {
  std::vector<double> e;
  for (int k = lo; k < hi; ++k) e.push_back(std::abs(Db(est(k) / truth)));
  std::nth_element(e.begin(), e.begin() + e.size() / 2, e.end());
  return e[e.size() / 2];
}

TEST_CASE("scaled bessel values at zero and ordering") {
  CHECK(BesselI0Scaled(0.0) == 1.0);
  CHECK(BesselI1Scaled(0.0) == 0.0);
  for (double x = 0.0; x < 200.0; x += 0.37) {
    double i0 = BesselI0Scaled(x), i1 = BesselI1Scaled(x);
    CHECK(i0 >= i1);
    CHECK(i1 >= 0.0);
  }
  CHECK_THROWS_AS(BesselI0Scaled(-1.0), std::invalid_argument);
}

TEST_CASE("scaled bessel agrees with an independent implementation") {
  for (double x = 1e-3; x < 600.0; x *= 1.07) {
    double r0 = boost::math::cyl_bessel_i(0, x) * std::exp(-x);
    double r1 = boost::math::cyl_bessel_i(1, x) * std::exp(-x);
    CHECK(std::abs(BesselI0Scaled(x) - r0) <= 1e-12 * r0);
    CHECK(std::abs(BesselI1Scaled(x) - r1) <= 1e-12 * r1);
  }
  // Both sides of the branch switch.
  for (double x : {kBesselSwitch - 1e-9, kBesselSwitch, kBesselSwitch + 1e-9}) {
    double r0 = boost::math::cyl_bessel_i(0, x) * std::exp(-x);
    CHECK(std::abs(BesselI0Scaled(x) - r0) <= 1e-12 * r0);
  }
}

TEST_CASE("stsa gain matches quadrature of the amplitude posterior") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> lx(-2.0, 2.0), lg(-1.0, 2.0);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    double xi = std::pow(10.0, lx(rng)), gamma = std::pow(10.0, lg(rng));
    double g = StsaGain(xi, gamma, 1e300);
    double ref = QuadratureGain(xi, gamma);
    CAPTURE(xi);
    CAPTURE(gamma);
    CHECK(std::abs(g - ref) / ref < 1e-6);
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("stsa gain high snr limit, monotonicity and bounds") {
  CHECK(std::abs(StsaGain(1e4, 1e4) - 1.0) < 1e-3);
  for (double gamma : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    double prev = 0.0;
    for (double lx = -3.0; lx <= 3.0; lx += 0.05) {
      double g = StsaGain(std::pow(10.0, lx), gamma);
      CHECK(g >= prev);
      prev = g;
    }
  }
  for (double lx = -4.0; lx <= 4.0; lx += 0.25)
    for (double lg = -10.0; lg <= 4.0; lg += 0.25) {
      double g = StsaGain(std::pow(10.0, lx), std::pow(10.0, lg));
      CHECK(std::isfinite(g));
      CHECK(g > 0.0);
      CHECK(g <= kGainCap);
    }
  CHECK_THROWS_AS(StsaGain(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(StsaGain(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("decision directed xi examples") {
  MmseState st;
  st.alpha = 0.98;
  st.prev_gain = Eigen::VectorXd::Zero(1);
  st.prev_gamma = Eigen::VectorXd::Zero(1);
  const double xi_min = std::pow(10.0, -2.5);
  Eigen::VectorXd g(1);
  g << 1.0;
  CHECK(DecisionDirectedXi(st, g, xi_min)(0) == doctest::Approx(xi_min).epsilon(1e-15));
  st.alpha = 0.0;
  g << 3.0;
  CHECK(DecisionDirectedXi(st, g, xi_min)(0) == doctest::Approx(2.0).epsilon(1e-15));
  st.alpha = 0.98;
  st.prev_gain << 0.5;
  st.prev_gamma << 4.0;
  g << 2.0;
  CHECK(std::abs(DecisionDirectedXi(st, g, xi_min)(0) - 1.0) < 1e-12);
}

TEST_CASE("noise psd init: floor, errors, flatness") {
  Waveform z;
  z.samples.assign(4000, 0.0);
  Eigen::VectorXd p = InitNoisePsd(z);
  CHECK(p.size() == dsp::kNumBins);
  CHECK((p.array() == 1e-10).all());
  Waveform shortw;
  shortw.samples.assign(999, 0.1);
  CHECK_THROWS_AS(InitNoisePsd(shortw), std::invalid_argument);

  Eigen::VectorXd avg = Eigen::VectorXd::Zero(dsp::kNumBins);
  for (int i = 0; i < 100; ++i) {
    Waveform w = WhiteNoise(2000, 500 + i);
    avg += InitNoisePsd(w);
  }
  CHECK(Db(avg.maxCoeff() / avg.minCoeff()) < 10.0);
  Waveform w = WhiteNoise(2000, 7);
  CHECK(InitNoisePsd(w) == InitNoisePsd(w));
  // Only samples 0..999 matter.
  Waveform w2 = w;
  for (std::size_t i = 1000; i < w2.size(); ++i) w2.samples[i] = 5.0;
  CHECK(InitNoisePsd(w2) == InitNoisePsd(w));
}

TEST_CASE("tracker converges on stationary noise within half a second") {
  const double sigma = 0.05;
  const double truth = sigma * sigma * HammingEnergy();
  const int settle = static_cast<int>(std::ceil(0.5 * 16000.0 / dsp::kHop));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Waveform w = Scaled(WhiteNoise(16000 * 4, seed), sigma);
    auto est = Track(w);
    double worst = 0.0, mean_err = 0.0;
    int n = 0;
    for (std::size_t t = settle; t < est.size(); ++t) {
      worst = std::max(worst, MedianAbsDbError(est[t], truth));
      for (int k = 1; k < 256; ++k, ++n) mean_err += std::abs(Db(est[t](k) / truth));
    }
    mean_err /= n;
    MESSAGE("seed " << seed << " worst median dB error " << worst << " mean " << mean_err);
    CHECK(worst < 3.0);
    CHECK(mean_err < 3.0);
  }
}

TEST_CASE("tracker follows a 10 dB step up within two seconds") {
  const double sigma = 0.02;
  const double high = 10.0 * sigma * sigma * HammingEnergy();
  Waveform w = Concat(Scaled(WhiteNoise(16000 * 2, 11), sigma),
                      Scaled(WhiteNoise(16000 * 4, 12), sigma * std::sqrt(10.0)));
  auto est = Track(w);
  // First frame lying wholly in the louder part.
  const int first = (16000 * 2 + dsp::kHop - 1) / dsp::kHop;
  int reached = -1;
  for (std::size_t t = first; t < est.size(); ++t)
    if (MedianAbsDbError(est[t], high) < 3.0) {
      reached = static_cast<int>(t);
      break;
    }
  REQUIRE(reached >= 0);
  double secs = (reached - first) * dsp::kHop / 16000.0;
  MESSAGE("step reached within 3 dB after " << secs << " s");
  CHECK(secs <= 2.0);
  // And stays there.
  for (std::size_t t = reached + 16; t < est.size(); ++t) CHECK(MedianAbsDbError(est[t], high) < 3.0);
}

TEST_CASE("tone burst leaves the noise estimate in other bins alone") {
  const double sigma = 0.01;
  Waveform noise = Scaled(WhiteNoise(16000 * 4, 21), sigma);
  Waveform w = noise;
  Waveform tone = testing::Sine(16000, 1000.0, 30.0 * sigma);
  for (std::size_t i = 0; i < tone.size(); ++i) w.samples[16000 * 2 + i] += tone.samples[i];
  auto est = Track(w);
  const int tone_bin = 32;
  auto level = [&](int t) {
    double s = 0.0;
    int n = 0;
    for (int k = 1; k < 256; ++k)
      if (std::abs(k - tone_bin) > 6) s += Db(est[t](k)), ++n;
    return s / n;
  };
  const int before = 16000 * 2 / dsp::kHop - 2;
  const int during_end = 16000 * 3 / dsp::kHop - 2;
  auto ref = Track(noise);
  double ref_level = 0.0;
  {
    int n = 0;
    for (int k = 1; k < 256; ++k)
      if (std::abs(k - tone_bin) > 6) ref_level += Db(ref[during_end](k)), ++n;
    ref_level /= n;
  }
  MESSAGE("non-tone level change " << level(during_end) - level(before) << " dB, vs no-tone run "
                                   << level(during_end) - ref_level << " dB");
  CHECK(std::abs(level(during_end) - ref_level) < 1.0);
  CHECK(std::abs(level(during_end) - level(before)) < 1.0);
  // A one second steady tone is partly absorbed, but stays well below its
  // own periodogram power.
  dsp::Spectrogram s = dsp::Stft(w);
  double tone_power = s.mag(tone_bin, during_end) * s.mag(tone_bin, during_end);
  CHECK(est[during_end](tone_bin) < 0.1 * tone_power);
}

TEST_CASE("white noise only input is strongly attenuated") {
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    Waveform w = Scaled(WhiteNoise(16000 * 3, seed), 0.1);
    Waveform y = EnhanceMmse(w);
    REQUIRE(y.size() == w.size());
    double ratio = MeanPower(y) / MeanPower(w);
    MESSAGE("output/input power " << Db(ratio) << " dB");
    CHECK(ratio < 0.1);
  }
}

TEST_CASE("speech bins are kept and the noise tail suppressed") {
  SpeakerVoice v = VoiceForSpeaker(3, 99);
  Waveform clean = SynthesizeUtterance(v, 1, 1, 99);
  Waveform tail;
  tail.samples.assign(16000, 0.0);
  clean = Concat(clean, tail);
  Waveform noise = ScaledNoiseFor(clean, WhiteNoise(clean.size() * 2, 5), 10.0, 6);
  Waveform mix = clean;
  for (std::size_t i = 0; i < mix.size(); ++i) mix.samples[i] += noise.samples[i];

  MmseResult r = EnhanceMmseDetailed(mix);
  dsp::Spectrogram cs = dsp::StftPadded(clean), ns = dsp::StftPadded(noise);
  REQUIRE(cs.frames() == r.gains.cols());
  std::vector<double> speech_gains;
  for (int t = 0; t < cs.frames(); ++t)
    for (int k = 0; k < cs.bins(); ++k) {
      double c = cs.mag(k, t) * cs.mag(k, t), n = ns.mag(k, t) * ns.mag(k, t);
      if (c > 100.0 * n) speech_gains.push_back(r.gains(k, t));
    }
  REQUIRE(speech_gains.size() > 100);
  std::nth_element(speech_gains.begin(), speech_gains.begin() + speech_gains.size() / 2,
                   speech_gains.end());
  double median = speech_gains[speech_gains.size() / 2];
  int tail_start = (static_cast<int>(clean.size()) - 16000) / dsp::kHop + 4;
  double tail_mean = r.gains.rightCols(r.gains.cols() - tail_start).mean();
  MESSAGE("speech median gain " << median << ", tail mean gain " << tail_mean);
  CHECK(median > 0.8);
  CHECK(tail_mean < 0.3);
}

TEST_CASE("fuzz: random corpus mixes stay finite and bounded") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> spk(0, 40), text(1, 60);
  std::uniform_real_distribution<double> snr(-10.0, 25.0);
  const std::vector<NoiseType> types = {NoiseType::kWhite, NoiseType::kCantineLike,
                                        NoiseType::kMarketLike, NoiseType::kAirplaneLike};
  for (int i = 0; i < 200; ++i) {
    Waveform clean = SynthesizeUtterance(VoiceForSpeaker(spk(rng), 5), text(rng), 1, 5);
    NoiseType nt = types[i % types.size()];
    Waveform noise = ColoredNoise(nt, clean.size() + 4000, 1000 + i);
    Waveform mix = MixAtSnr(clean, noise, snr(rng), i);
    Waveform y = EnhanceMmse(mix);
    REQUIRE(y.size() == mix.size());
    double in_peak = 0.0, out_peak = 0.0;
    bool finite = true;
    for (double s : mix.samples) in_peak = std::max(in_peak, std::abs(s));
    for (double s : y.samples) {
      finite = finite && std::isfinite(s);
      out_peak = std::max(out_peak, std::abs(s));
    }
    CHECK(finite);
    CHECK(out_peak <= 4.0 * in_peak);
  }
}

TEST_CASE("enhancement is deterministic and length preserving") {
  Waveform w = testing::RandomSignal(12345, 8, 0.2);
  Waveform a = EnhanceMmse(w), b = EnhanceMmse(w);
  CHECK(a.size() == w.size());
  CHECK(a.samples == b.samples);
  Waveform s;
  s.samples.assign(900, 0.1);
  CHECK_THROWS_AS(EnhanceMmse(s), std::invalid_argument);
}

}  // namespace
}  // namespace cganse::mmse
