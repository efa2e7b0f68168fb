// src/corpus/mix.cc

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

#include "cganse/corpus/mix.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "cganse/corpus/noise.h"
#include "cganse/corpus/wav_io.h"

namespace cganse {

namespace fs = std::filesystem;

namespace {

std::uint64_t Fnv1a(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Combine(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string SnrTag(double snr) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", snr);
  std::string s = buf;
  std::replace(s.begin(), s.end(), '-', 'm');
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

// Six long speech sources, each a different rotation of the pool.
std::vector<Waveform> BabbleSources(const Manifest &m, std::size_t length) {
  std::vector<const ManifestEntry *> pool;
  for (const auto &e : m.entries)
    if (!e.condition && e.split == Split::kUbm) pool.push_back(&e);
  if (pool.empty())
    for (const auto &e : m.entries)
      if (!e.condition) pool.push_back(&e);
  if (pool.empty()) throw std::invalid_argument("mix: babble needs clean speech in the manifest");
  std::vector<Waveform> clean;
  for (const auto *e : pool) clean.push_back(m.LoadAudio(*e));
  std::vector<Waveform> sources(6);
  for (std::size_t i = 0; i < 6; ++i) {
    Waveform &s = sources[i];
    s.sample_rate = clean[0].sample_rate;
    for (std::size_t k = i; s.size() < length; ++k) {
      const Waveform &w = clean[k % clean.size()];
      s.samples.insert(s.samples.end(), w.samples.begin(), w.samples.end());
    }
  }
  return sources;
}

}  // namespace

Manifest MixManifest(const Manifest &manifest, const MixOptions &opts) {
  if (opts.snrs_db.empty()) throw std::invalid_argument("mix: empty SNR list");
  std::vector<const ManifestEntry *> todo;
  for (const auto &e : manifest.entries)
    if (!e.condition && std::find(opts.splits.begin(), opts.splits.end(), e.split) != opts.splits.end())
      todo.push_back(&e);
  if (todo.empty()) throw std::invalid_argument("mix: no clean entries in the selected splits");

  const std::string noise_name = NoiseTypeName(opts.noise);
  const fs::path rel_dir = fs::path("mix") / noise_name;
  std::error_code ec;
  fs::create_directories(fs::path(manifest.Resolve(rel_dir.string())), ec);
  if (ec) throw std::runtime_error("mix: cannot create " + manifest.Resolve(rel_dir.string()));

  std::vector<Waveform> babble;
  if (opts.noise == NoiseType::kBabble) {
    std::size_t longest = 0;
    for (const auto *e : todo) longest = std::max(longest, manifest.LoadAudio(*e).size());
    babble = BabbleSources(manifest, longest + kNoiseMarginSamples);
  }

  Manifest out = manifest;
  for (const auto *e : todo) {
    const Waveform clean = manifest.LoadAudio(*e);
    for (double snr : opts.snrs_db) {
      const std::string tag = noise_name + "_" + SnrTag(snr) + "dB";
      const std::uint64_t key =
          Combine(Combine(opts.seed, Fnv1a(e->utterance_id)), Fnv1a(tag));
      const std::size_t len = clean.size() + kNoiseMarginSamples;
      Waveform noise = opts.noise == NoiseType::kBabble
                           ? MakeBabble(babble, len, key)
                           : ColoredNoise(opts.noise, len, key, clean.sample_rate);
      ManifestEntry n = *e;
      n.utterance_id = e->utterance_id + "__" + tag;
      n.file_path = (rel_dir / (n.utterance_id + ".wav")).generic_string();
      n.clean_path = e->file_path;
      n.condition = Condition{opts.noise, snr};
      SaveWav(manifest.Resolve(n.file_path), MixAtSnr(clean, noise, snr, key ^ 0x5bd1e995ULL));
      out.entries.push_back(std::move(n));
    }
  }
  out.Validate();
  return out;
}

}  // namespace cganse
