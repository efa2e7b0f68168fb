// src/corpus/synth.cc

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

#include "cganse/corpus/synth.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cganse/corpus/wav_io.h"

namespace cganse {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;
constexpr double kPlastic = 0.7548776662466927;
constexpr double kTrailingSilenceSec = 0.1;

// F1..F3 of ten vowels (Hz).
constexpr std::array<std::array<double, 3>, 10> kVowels = {{
    {270, 2290, 3010}, {390, 1990, 2550}, {530, 1840, 2480}, {660, 1720, 2410},
    {730, 1090, 2440}, {570, 840, 2410},  {440, 1020, 2240}, {300, 870, 2240},
    {640, 1190, 2390}, {490, 1350, 1690},
}};

enum class SegKind { kVowel, kFricative, kNasal, kPause };

struct Segment {
  SegKind kind;
  double dur_sec;
  std::array<double, 3> formants;
  double fric_hz;
};

std::uint64_t Mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined key.
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Frac(double x) { return x - std::floor(x); }

std::vector<Segment> ScriptForText(int text_id, std::uint64_t corpus_seed) {
  std::mt19937_64 rng(Mix(corpus_seed, 0x7e47ULL + text_id));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Segment> script;
  double total = 0.0;
  int n = 7 + static_cast<int>(u(rng) * 4);
  // Keep adding segments until the utterance is long enough.
  const double min_speech = static_cast<double>(kMinUtteranceSamples) / kDefaultSampleRate;
  for (int i = 0; i < n || total < min_speech; ++i) {
    Segment s{};
    double r = u(rng);
    if (i == 0 || r < 0.55) {
      s.kind = SegKind::kVowel;
      s.formants = kVowels[static_cast<std::size_t>(u(rng) * kVowels.size()) % kVowels.size()];
      s.dur_sec = 0.12 + 0.10 * u(rng);
    } else if (r < 0.75) {
      s.kind = SegKind::kFricative;
      s.fric_hz = 2500.0 + 3500.0 * u(rng);
      s.formants = kVowels[4];
      s.dur_sec = 0.08 + 0.06 * u(rng);
    } else if (r < 0.9) {
      s.kind = SegKind::kNasal;
      s.formants = {250.0, 1100.0 + 400.0 * u(rng), 2300.0};
      s.dur_sec = 0.06 + 0.05 * u(rng);
    } else {
      s.kind = SegKind::kPause;
      s.formants = kVowels[8];
      s.dur_sec = 0.06 + 0.06 * u(rng);
    }
    script.push_back(s);
    total += s.dur_sec;
  }
  return script;
}

// Two-pole resonator with unit gain at DC.
struct Resonator {
  double y1 = 0.0, y2 = 0.0;
  double Step(double x, double freq, double bw, double fs) {
    double r = std::exp(-kPi * bw / fs);
    double c = 2.0 * r * std::cos(2.0 * kPi * freq / fs);
    double a = 1.0 - c + r * r;
    double y = a * x + c * y1 - r * r * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

}  // namespace

SpeakerVoice VoiceForSpeaker(int speaker_index, std::uint64_t corpus_seed) {
  std::mt19937_64 rng(Mix(corpus_seed, 0x5ea4e7ULL));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
  const double s = static_cast<double>(speaker_index);
  SpeakerVoice v;
  // The golden-ratio sequence keeps base pitches pairwise distinct.
  v.f0_hz = 95.0 + 120.0 * Frac(s * kGolden + c1);
  v.formant_scale = 0.86 + 0.28 * Frac(s * kPlastic + c2);
  v.glottal_pole = 0.88 + 0.09 * Frac(s * 0.5698402909980532 + c3);
  v.breathiness = 0.01 + 0.04 * Frac(s * 0.4142135623730950 + c1);
  v.vibrato_rate_hz = 3.0 + 3.0 * Frac(s * 0.3247179572447460 + c2);
  return v;
}

Waveform SynthesizeUtterance(const SpeakerVoice &voice, int text_id,
                             int session_id, std::uint64_t corpus_seed) {
  const double fs = kDefaultSampleRate;
  const std::vector<Segment> script = ScriptForText(text_id, corpus_seed);

  std::uint64_t key = Mix(Mix(corpus_seed, static_cast<std::uint64_t>(text_id)),
                          Mix(static_cast<std::uint64_t>(session_id),
                              static_cast<std::uint64_t>(voice.f0_hz * 1000.0)));
  std::mt19937_64 rng(key);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double tempo = 0.92 + 0.16 * u(rng);
  const double pitch_factor = 0.95 + 0.10 * u(rng);
  const double vib_phase = 2.0 * kPi * u(rng);

  // Per-sample control targets.
  std::vector<double> voicing, frication, fric_hz;
  std::vector<std::array<double, 3>> formant;
  for (const Segment &s : script) {
    auto n = static_cast<std::size_t>(s.dur_sec * tempo * fs);
    double v = 0.0, f = 0.0;
    switch (s.kind) {
      case SegKind::kVowel: v = 1.0; break;
      case SegKind::kFricative: f = 0.35; v = 0.05; break;
      case SegKind::kNasal: v = 0.45; break;
      case SegKind::kPause: break;
    }
    std::array<double, 3> fm = s.formants;
    for (double &x : fm) x *= voice.formant_scale;
    for (std::size_t i = 0; i < n; ++i) {
      voicing.push_back(v);
      frication.push_back(f);
      fric_hz.push_back(s.fric_hz);
      formant.push_back(fm);
    }
  }
  const std::size_t speech_len = voicing.size();
  const auto trail = static_cast<std::size_t>(kTrailingSilenceSec * fs);
  std::size_t total = kLeadingSilenceSamples + speech_len + trail;
  if (total < kMinUtteranceSamples) total = kMinUtteranceSamples;

  Waveform w;
  w.samples.assign(total, 0.0);
  std::array<Resonator, 3> tract;
  Resonator fric_res;
  double phase = 0.0, g1 = 0.0, g2 = 0.0, g_prev = 0.0;
  double sm_voice = 0.0, sm_fric = 0.0, sm_fhz = 4000.0;
  std::array<double, 3> sm_form = formant.empty() ? std::array<double, 3>{500, 1500, 2500}
                                                  : formant.front();
  const double ctl = std::exp(-1.0 / (0.012 * fs));  // control smoothing
  const double bws[3] = {70.0, 100.0, 140.0};

  for (std::size_t n = 0; n < speech_len; ++n) {
    const double t = static_cast<double>(n) / fs;
    sm_voice = ctl * sm_voice + (1.0 - ctl) * voicing[n];
    sm_fric = ctl * sm_fric + (1.0 - ctl) * frication[n];
    sm_fhz = ctl * sm_fhz + (1.0 - ctl) * (fric_hz[n] > 0 ? fric_hz[n] : sm_fhz);
    for (int k = 0; k < 3; ++k)
      sm_form[k] = ctl * sm_form[k] + (1.0 - ctl) * formant[n][k];

    const double decl = 1.0 - 0.12 * t / (static_cast<double>(speech_len) / fs);
    const double f0 = voice.f0_hz * pitch_factor * decl *
                      (1.0 + 0.03 * std::sin(2.0 * kPi * voice.vibrato_rate_hz * t + vib_phase));
    phase += f0 / fs;
    double pulse = 0.0;
    if (phase >= 1.0) {
      phase -= 1.0;
      pulse = 1.0;
    }
    // Glottal shaping followed by lip radiation (first difference).
    g1 = voice.glottal_pole * g1 + pulse;
    g2 = voice.glottal_pole * g2 + g1;
    const double source = g2 - g_prev;
    g_prev = g2;

    double x = sm_voice * (source + voice.breathiness * 3.0 * gauss(rng));
    for (int k = 0; k < 3; ++k) x = tract[k].Step(x, sm_form[k], bws[k], fs);
    double fr = fric_res.Step(gauss(rng), sm_fhz, 1500.0, fs);
    w.samples[kLeadingSilenceSamples + n] = x + sm_fric * fr * 4.0;
  }

  double peak = 0.0;
  for (double s : w.samples) peak = std::max(peak, std::abs(s));
  const double level = 0.5 * (0.9 + 0.2 * u(rng));
  const double scale = peak > 0 ? level / peak : 1.0;
  // A faint floor keeps silent stretches from being digital zero.
  for (double &s : w.samples) s = s * scale + 1e-4 * gauss(rng);
  return w;
}

Manifest SynthCorpus(const SynthOptions &opts) {
  if (opts.n_speakers < 2)
    throw std::invalid_argument("synth: at least two speakers required");
  if (opts.utterances_per_speaker < 1)
    throw std::invalid_argument("synth: at least one utterance per speaker required");
  std::error_code ec;
  const fs::path wav_dir = fs::path(opts.out_dir) / "wav";
  fs::create_directories(wav_dir, ec);
  if (ec || !fs::is_directory(wav_dir))
    throw std::runtime_error("synth: cannot create output directory " + wav_dir.string());

  Manifest m;
  m.base_dir = opts.out_dir;
  static constexpr int kEnrollSessions[] = {1, 4, 7};
  for (int s = 0; s < opts.n_speakers; ++s) {
    const SpeakerVoice voice = VoiceForSpeaker(s, opts.seed);
    char spk[16];
    std::snprintf(spk, sizeof(spk), "spk%03d", s);
    const int role = s % 3;
    for (int u = 0; u < opts.utterances_per_speaker; ++u) {
      ManifestEntry e;
      e.speaker_id = spk;
      if (role == 0) {
        e.text_id = 1;
        e.session_id = u % 9 + 1;
        bool enroll = e.session_id == 1 || e.session_id == 4 || e.session_id == 7;
        e.split = enroll ? Split::kEnroll : Split::kTest;
      } else if (role == 1) {
        e.text_id = 2 + u % 29;
        e.session_id = kEnrollSessions[(u / 29) % 3];
        e.split = Split::kEnhancerTrain;
      } else {
        e.text_id = 31 + u;
        e.session_id = 1;
        e.split = Split::kUbm;
      }
      char id[64];
      std::snprintf(id, sizeof(id), "%s_t%02d_s%d_u%02d", spk, e.text_id,
                    e.session_id, u);
      e.utterance_id = id;
      e.file_path = "wav/" + e.utterance_id + ".wav";
      // Session ids repeat when u >= 9; fold u in so repeats differ.
      Waveform w = SynthesizeUtterance(voice, e.text_id, e.session_id + 10 * u, opts.seed);
      SaveWav((fs::path(opts.out_dir) / e.file_path).string(), w);
      m.entries.push_back(std::move(e));
    }
  }
  m.Validate();
  return m;
}

}  // namespace cganse
