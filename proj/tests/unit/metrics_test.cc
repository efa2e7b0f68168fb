// tests/unit/metrics_test.cc

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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "doctest.h"

#include "cganse/corpus/manifest.h"
#include "cganse/corpus/noise.h"
#include "cganse/corpus/synth.h"
#include "cganse/corpus/wav_io.h"
#include "cganse/metrics/metrics.h"
#include "cganse/metrics/report.h"
#include "unit/test_util.h"

namespace cganse::metrics {
namespace {

Waveform Scaled(const Waveform &w, double a) {
  Waveform out = w;
  for (double &s : out.samples) s *= a;
  return out;
}

Waveform Speech(int text = 3) { return SynthesizeUtterance(VoiceForSpeaker(2, 11), text, 1, 11); }

// Amplitude-modulated tones at 10 kHz with a quiet lead-in, plus uniform
// noise from a 64-bit LCG. The expected value below was produced by an
// independent STOI implementation on the same signals.
void ReferencePair(Waveform *x, Waveform *y) {
  const int fs = 10000, n = 30000;
  x->sample_rate = y->sample_rate = fs;
  x->samples.resize(n);
  y->samples.resize(n);
  std::uint64_t s = 7;
  for (int i = 0; i < n; ++i) {
    double t = double(i) / fs;
    double env = 0.5 + 0.5 * std::pow(std::sin(2 * M_PI * 3 * t), 2);
    double v = env * (std::sin(2 * M_PI * 440 * t) + 0.5 * std::sin(2 * M_PI * 1210 * t) +
                      0.3 * std::sin(2 * M_PI * 2750 * t));
    if (i < 4000) v *= 0.001;
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    double u = double(s >> 11) / double(1ULL << 53) - 0.5;
    x->samples[i] = v;
    y->samples[i] = v + 0.8 * u;
  }
}

TEST_CASE("stoi identities") {
  Waveform x = Speech();
  CHECK(std::abs(Stoi(x, x) - 1.0) < 1e-6);
  CHECK(std::abs(Stoi(x, Scaled(x, -1.0)) - 1.0) < 1e-6);

  Waveform n = WhiteNoise(x.size(), 3);
  Waveform y = MixAtSnr(x, n, 0.0, 1);
  const double base = Stoi(x, y);
  CHECK(std::abs(Stoi(x, Scaled(y, 0.1)) - base) < 1e-6);
  CHECK(std::abs(Stoi(x, Scaled(y, 10.0)) - base) < 1e-6);
  CHECK(base < 1.0);
  CHECK(base > 0.0);
}

TEST_CASE("stoi matches a reference implementation") {
  Waveform x, y;
  ReferencePair(&x, &y);
  CHECK(Stoi(x, y) == doctest::Approx(0.271319884802).epsilon(1e-6));
}

TEST_CASE("stoi decreases with noise") {
  Waveform x = Speech(5);
  Waveform n = WhiteNoise(x.size() + 1000, 9);
  double prev = 1.0;
  for (double snr : {20.0, 10.0, 0.0, -10.0}) {
    double s = Stoi(x, MixAtSnr(x, n, snr, 4));
    MESSAGE("snr " << snr << " stoi " << s);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("stoi preconditions") {
  Waveform x = testing::Sine(3000, 440.0);  // 187 ms
  CHECK_THROWS_AS(Stoi(x, x), std::invalid_argument);
  Waveform silent(std::vector<double>(32000, 0.0));
  CHECK_THROWS_AS(Stoi(silent, silent), std::invalid_argument);
  Waveform other = Speech();
  other.sample_rate = 8000;
  CHECK_THROWS_AS(Stoi(Speech(), other), std::invalid_argument);
}

TEST_CASE("seg snr") {
  Waveform x = Speech();
  CHECK(SegSnr(x, x) == kSegSnrMax);
  // error energy equals signal energy in every frame
  CHECK(std::abs(SegSnr(x, Scaled(x, 2.0))) < 1e-12);
  Waveform loud = Scaled(WhiteNoise(x.size(), 5), 100.0);
  CHECK(SegSnr(x, loud) == kSegSnrMin);
  // 10 dB flat error
  CHECK(std::abs(SegSnr(x, Scaled(x, 1.0 - std::sqrt(0.1))) - 10.0) < 1e-9);
}

TEST_CASE("log spectral distance") {
  Waveform x = Speech();
  CHECK(Lsd(x, x) == 0.0);
  CHECK(Lsd(x, Scaled(x, 10.0)) == doctest::Approx(20.0).epsilon(1e-4));
  Waveform y = MixAtSnr(x, WhiteNoise(x.size(), 2), 5.0, 3);
  CHECK(std::abs(Lsd(x, y) - Lsd(y, x)) < 1e-3);
  CHECK(Lsd(x, y) > 0.0);
}

TEST_CASE("report grid, means and determinism") {
  std::string dir = testing::TempDir("report");
  Manifest m;
  m.base_dir = dir;
  int id = 0;
  for (int u = 0; u < 2; ++u) {
    Waveform clean = Speech(10 + u);
    std::string cp = "clean" + std::to_string(u) + ".wav";
    SaveWav(dir + "/" + cp, clean);
    for (NoiseType nt : {NoiseType::kWhite, NoiseType::kAirplaneLike})
      for (double snr : {0.0, 10.0}) {
        Waveform n = ColoredNoise(nt, clean.size() + 1000, 40 + id);
        std::string p = "mix" + std::to_string(id) + ".wav";
        SaveWav(dir + "/" + p, MixAtSnr(clean, n, snr, id));
        ManifestEntry e;
        e.utterance_id = "u" + std::to_string(id++);
        e.speaker_id = "s0";
        e.split = Split::kTest;
        e.file_path = p;
        e.clean_path = cp;
        e.condition = Condition{nt, snr};
        m.entries.push_back(e);
      }
  }
  std::vector<FrontEnd> fes = {{"none", [](const Waveform &w) { return w; }},
                               {"half", [](const Waveform &w) { return Scaled(w, 0.5); }}};
  EvalReport r = BuildReport(m, fes);
  REQUIRE(r.cells.size() == 8);
  CHECK(r.cells[0].front_end == "none");
  CHECK(r.cells[0].utterances == 2);
  CHECK(r.cells[0].snr_db == 0.0);
  // STOI ignores the gain
  for (int i = 0; i < 4; ++i) CHECK(std::abs(r.cells[i].stoi - r.cells[i + 4].stoi) < 1e-6);

  for (const EvalCell &mean : r.Means()) {
    double s = 0, g = 0, l = 0;
    int k = 0;
    for (const EvalCell &c : r.cells)
      if (c.front_end == mean.front_end && c.noise == mean.noise) {
        s += c.stoi;
        g += c.seg_snr;
        l += c.lsd;
        ++k;
      }
    CHECK(k == 2);
    CHECK(std::abs(mean.stoi - s / k) < 1e-12);
    CHECK(std::abs(mean.seg_snr - g / k) < 1e-12);
    CHECK(std::abs(mean.lsd - l / k) < 1e-12);
  }
  std::string csv = r.ToCsv();
  CHECK(csv.rfind("front_end,noise,snr,stoi,seg_snr,lsd\n", 0) == 0);
  CHECK(csv.find(",mean,") != std::string::npos);
  CHECK(BuildReport(m, fes, std::nullopt, 3).ToCsv() == csv);
  CHECK(r.ToTable().find("mean") != std::string::npos);
  CHECK(BuildReport(m, fes, Split::kTest).cells.size() == 8);
  CHECK_THROWS_AS(BuildReport(m, fes, Split::kEnroll), std::invalid_argument);
  CHECK_THROWS_AS(BuildReport(m, {}), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cganse::metrics
