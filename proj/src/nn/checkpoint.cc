// src/nn/checkpoint.cc

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

#include "cganse/nn/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cganse::nn::inline CGANSE_NN_ABI {

static_assert(std::endian::native == std::endian::little, "checkpoint IO assumes little endian");

namespace {

template <typename T>
void Put(std::string &out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T Take(const std::string &in, std::size_t &pos) {
  if (pos + sizeof(T) > in.size()) throw std::runtime_error("checkpoint: truncated");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

const Tensor &Checkpoint::Get(const std::string &name, const std::vector<int> &shape) const {
  for (const auto &[n, t] : tensors)
    if (n == name) {
      if (t.shape() != shape)
        throw std::runtime_error("checkpoint: tensor " + name + " has shape " +
                                 ShapeString(t.shape()) + ", expected " + ShapeString(shape));
      return t;
    }
  throw std::runtime_error("checkpoint: missing tensor " + name);
}

std::string EncodeCheckpoint(const Checkpoint &ckpt) {
  nlohmann::ordered_json header = ckpt.meta;
  nlohmann::ordered_json index = nlohmann::ordered_json::array();
  for (const auto &[name, t] : ckpt.tensors)
    index.push_back({{"name", name}, {"shape", t.shape()}});
  header["tensors"] = index;
  const std::string text = header.dump();

  std::string out(kCheckpointMagic, 8);
  Put<std::uint32_t>(out, kCheckpointVersion);
  Put<std::uint64_t>(out, text.size());
  out += text;
  for (const auto &[name, t] : ckpt.tensors)
    for (Real v : t.values()) Put<float>(out, static_cast<float>(v));
  return out;
}

Checkpoint DecodeCheckpoint(const std::string &bytes) {
  if (bytes.size() < 20 || bytes.compare(0, 8, kCheckpointMagic, 8) != 0)
    throw std::runtime_error("checkpoint: bad magic");
  std::size_t pos = 8;
  auto version = Take<std::uint32_t>(bytes, pos);
  if (version != kCheckpointVersion)
    throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
  auto len = Take<std::uint64_t>(bytes, pos);
  if (len > bytes.size() - pos) throw std::runtime_error("checkpoint: truncated header");
  Checkpoint ckpt;
  try {
    ckpt.meta = nlohmann::ordered_json::parse(bytes.substr(pos, len));
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("checkpoint: bad header: ") + e.what());
  }
  pos += len;
  if (!ckpt.meta.contains("tensors") || !ckpt.meta["tensors"].is_array())
    throw std::runtime_error("checkpoint: header has no tensor index");
  for (const auto &entry : ckpt.meta["tensors"]) {
    std::vector<int> shape = entry.at("shape").get<std::vector<int>>();
    Tensor t(shape);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<Real>(Take<float>(bytes, pos));
    ckpt.tensors.emplace_back(entry.at("name").get<std::string>(), std::move(t));
  }
  if (pos != bytes.size()) throw std::runtime_error("checkpoint: trailing bytes");
  ckpt.meta.erase("tensors");
  return ckpt;
}

void SaveCheckpoint(const Checkpoint &ckpt, const std::string &path) {
  std::string bytes = EncodeCheckpoint(ckpt);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing checkpoint " + path);
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return DecodeCheckpoint(ss.str());
}

}  // namespace cganse::nn::inline CGANSE_NN_ABI
