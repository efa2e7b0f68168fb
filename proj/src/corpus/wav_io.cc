// src/corpus/wav_io.cc

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

#include "cganse/corpus/wav_io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "cganse/dsp/resample.h"

namespace cganse {

namespace {

std::uint32_t ReadU32(const std::uint8_t *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const std::uint8_t *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<std::uint8_t> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back((v >> (8 * i)) & 0xff);
}

void PutU16(std::vector<std::uint8_t> *out, std::uint16_t v) {
  out->push_back(v & 0xff);
  out->push_back((v >> 8) & 0xff);
}

void PutTag(std::vector<std::uint8_t> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

}  // namespace

std::int16_t ToPcm16(double amplitude) {
  double v = std::clamp(amplitude, -1.0, 1.0) * 32768.0;
  v = std::nearbyint(v);
  v = std::clamp(v, -32768.0, 32767.0);
  return static_cast<std::int16_t>(v);
}

Waveform DecodeWav(const std::vector<std::uint8_t> &bytes,
                   const WavReadOptions &opts) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw std::runtime_error("wav: not a RIFF/WAVE container");

  bool have_fmt = false;
  int channels = 0, bits = 0, format = 0;
  std::uint32_t rate = 0;
  const std::uint8_t *data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t *chunk = bytes.data() + pos;
    std::size_t len = ReadU32(chunk + 4);
    std::size_t body = pos + 8;
    if (body + len > bytes.size()) len = bytes.size() - body;  // truncated tail
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16) throw std::runtime_error("wav: short fmt chunk");
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt || data == nullptr)
    throw std::runtime_error("wav: missing fmt or data chunk");
  if (format != 1 || bits != 16)
    throw std::runtime_error("wav: only linear PCM 16-bit is supported");
  if (channels != 1)
    throw std::runtime_error("wav: only mono files are supported");

  Waveform w;
  w.sample_rate = static_cast<int>(rate);
  std::size_t n = data_len / 2;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = static_cast<std::int16_t>(ReadU16(data + 2 * i));
    w.samples[i] = static_cast<double>(v) / 32768.0;
  }

  if (w.sample_rate != opts.expected_rate) {
    if (!opts.allow_resample)
      throw std::runtime_error("wav: sample rate " +
                               std::to_string(w.sample_rate) + " != " +
                               std::to_string(opts.expected_rate));
    w = dsp::Resample(w, opts.expected_rate);
  }
  return w;
}

Waveform LoadWav(const std::string &path, const WavReadOptions &opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("wav: cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes, opts);
  } catch (const std::runtime_error &e) {
    throw std::runtime_error(std::string(e.what()) + " (" + path + ")");
  }
}

std::vector<std::uint8_t> EncodeWav(const Waveform &w) {
  const std::uint32_t data_len = static_cast<std::uint32_t>(w.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_len);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_len);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  PutTag(&out, "data");
  PutU32(&out, data_len);
  for (double s : w.samples)
    PutU16(&out, static_cast<std::uint16_t>(ToPcm16(s)));
  return out;
}

void SaveWav(const std::string &path, const Waveform &w) {
  auto bytes = EncodeWav(w);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("wav: cannot write " + path);
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("wav: write failed for " + path);
}

}  // namespace cganse
