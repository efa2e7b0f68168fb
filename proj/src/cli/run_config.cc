// src/cli/run_config.cc

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

#include "cganse/cli/run_config.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cganse::cli {

namespace {

std::string Trim(const std::string &s) {
  const char *ws = " \t\r\n";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &v) {
  T out{};
  const char *end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || v.empty())
    throw UsageError("config: bad value for " + key + ": '" + v + "'");
  return out;
}

}  // namespace

std::vector<std::string> SplitList(const std::string &s, char sep) {
  std::vector<std::string> out;
  if (Trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(Trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::pair<std::string, std::string> *RunConfig::Find(const std::string &key) {
  for (auto &kv : values_)
    if (kv.first == key) return &kv;
  return nullptr;
}

const std::pair<std::string, std::string> *RunConfig::Find(const std::string &key) const {
  for (const auto &kv : values_)
    if (kv.first == key) return &kv;
  return nullptr;
}

void RunConfig::Define(const std::string &key, const std::string &default_value) {
  if (auto *kv = Find(key)) {
    kv->second = default_value;
    return;
  }
  values_.emplace_back(key, default_value);
}

bool RunConfig::Has(const std::string &key) const { return Find(key) != nullptr; }

void RunConfig::Set(const std::string &key, const std::string &value) {
  auto *kv = Find(key);
  if (kv == nullptr) throw UsageError("config: unknown key '" + key + "'");
  kv->second = value;
}

void RunConfig::MergeText(const std::string &text, const std::string &origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = Trim(line.substr(0, eq));
    if (key.empty())
      throw UsageError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (!Has(key))
      throw UsageError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    Set(key, Trim(line.substr(eq + 1)));
  }
}

void RunConfig::MergeFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  MergeText(ss.str(), path);
}

void RunConfig::MergeAssignment(const std::string &assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw UsageError("--set expects key=value, got '" + assignment + "'");
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

const std::string &RunConfig::Get(const std::string &key) const {
  const auto *kv = Find(key);
  if (kv == nullptr) throw std::logic_error("config: undeclared key " + key);
  return kv->second;
}

int RunConfig::GetInt(const std::string &key) const { return ParseNumber<int>(key, Get(key)); }

double RunConfig::GetDouble(const std::string &key) const {
  return ParseNumber<double>(key, Get(key));
}

std::uint64_t RunConfig::GetUint64(const std::string &key) const {
  return ParseNumber<std::uint64_t>(key, Get(key));
}

bool RunConfig::GetBool(const std::string &key) const {
  const std::string &v = Get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config: bad boolean for " + key + ": '" + v + "'");
}

std::vector<double> RunConfig::GetDoubles(const std::string &key) const {
  std::vector<double> out;
  for (const std::string &s : SplitList(Get(key))) out.push_back(ParseNumber<double>(key, s));
  return out;
}

std::vector<int> RunConfig::GetInts(const std::string &key) const {
  std::vector<int> out;
  for (const std::string &s : SplitList(Get(key))) out.push_back(ParseNumber<int>(key, s));
  return out;
}

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[k, v] : values_) j[k] = v;
  return j;
}

}  // namespace cganse::cli
