// src/corpus/manifest.cc

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

#include "cganse/corpus/manifest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "cganse/corpus/wav_io.h"

namespace cganse {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string SplitName(Split s) {
  switch (s) {
    case Split::kUbm: return "ubm";
    case Split::kEnhancerTrain: return "enhancer_train";
    case Split::kEnroll: return "enroll";
    case Split::kTest: return "test";
  }
  return "unknown";
}

std::optional<Split> ParseSplit(const std::string &name) {
  for (Split s : {Split::kUbm, Split::kEnhancerTrain, Split::kEnroll, Split::kTest})
    if (SplitName(s) == name) return s;
  return std::nullopt;
}

namespace {

json EntryToJson(const ManifestEntry &e) {
  json j;
  j["utterance_id"] = e.utterance_id;
  j["speaker_id"] = e.speaker_id;
  j["text_id"] = e.text_id;
  j["session_id"] = e.session_id;
  j["split"] = SplitName(e.split);
  j["file_path"] = e.file_path;
  if (e.condition) {
    j["condition"] = {{"noise_type", NoiseTypeName(e.condition->noise_type)},
                      {"snr_db", e.condition->snr_db}};
    j["clean_path"] = e.clean_path;
  } else {
    j["condition"] = nullptr;
  }
  return j;
}

ManifestEntry EntryFromJson(const json &j) {
  ManifestEntry e;
  e.utterance_id = j.at("utterance_id").get<std::string>();
  e.speaker_id = j.at("speaker_id").get<std::string>();
  e.text_id = j.at("text_id").get<int>();
  e.session_id = j.at("session_id").get<int>();
  auto split = ParseSplit(j.at("split").get<std::string>());
  if (!split) throw std::runtime_error("manifest: unknown split");
  e.split = *split;
  e.file_path = j.at("file_path").get<std::string>();
  const json &c = j.at("condition");
  if (!c.is_null()) {
    auto t = ParseNoiseType(c.at("noise_type").get<std::string>());
    if (!t) throw std::runtime_error("manifest: unknown noise type");
    e.condition = Condition{*t, c.at("snr_db").get<double>()};
    e.clean_path = j.value("clean_path", "");
  }
  return e;
}

}  // namespace

std::string Manifest::ToJsonLines() const {
  std::string out;
  for (const auto &e : entries) {
    out += EntryToJson(e).dump();
    out += '\n';
  }
  return out;
}

Manifest Manifest::FromJsonLines(const std::string &text,
                                 const std::string &base_dir) {
  Manifest m;
  m.base_dir = base_dir;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      m.entries.push_back(EntryFromJson(json::parse(line)));
    } catch (const std::exception &ex) {
      throw std::runtime_error("manifest line " + std::to_string(lineno) + ": " +
                               ex.what());
    }
  }
  m.Validate();
  return m;
}

Manifest Manifest::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("manifest: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJsonLines(ss.str(), fs::path(path).parent_path().string());
}

void Manifest::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("manifest: cannot write " + path);
  out << ToJsonLines();
}

std::string Manifest::Resolve(const std::string &file_path) const {
  fs::path p(file_path);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (fs::path(base_dir) / p).string();
}

Waveform Manifest::LoadAudio(const ManifestEntry &e) const {
  return LoadWav(Resolve(e.file_path));
}

Waveform Manifest::LoadClean(const ManifestEntry &e) const {
  return LoadWav(Resolve(e.condition ? e.clean_path : e.file_path));
}

Waveform Manifest::LoadNoise(const ManifestEntry &e) const {
  if (!e.condition)
    throw std::runtime_error("manifest: entry " + e.utterance_id +
                             " has no noise component");
  Waveform noisy = LoadAudio(e);
  Waveform clean = LoadClean(e);
  if (noisy.size() != clean.size())
    throw std::runtime_error("manifest: length mismatch for " + e.utterance_id);
  for (std::size_t i = 0; i < noisy.size(); ++i)
    noisy.samples[i] -= clean.samples[i];
  return noisy;
}

std::vector<const ManifestEntry *> Manifest::Select(Split split,
                                                    bool noisy) const {
  std::vector<const ManifestEntry *> out;
  for (const auto &e : entries)
    if (e.split == split && e.condition.has_value() == noisy) out.push_back(&e);
  return out;
}

void Manifest::Validate() const {
  std::set<std::string> seen;
  for (const auto &e : entries)
    if (!seen.insert(e.utterance_id).second)
      throw std::runtime_error("manifest: duplicate utterance id " + e.utterance_id);
}

}  // namespace cganse
