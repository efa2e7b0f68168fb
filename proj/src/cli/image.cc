// src/cli/image.cc

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

#include "cganse/cli/image.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#ifdef CGANSE_HAVE_PNG
#include <png.h>
#endif

#include "cganse/dsp/chunk.h"
#include "cganse/dsp/stft.h"

namespace cganse::cli {

GrayImage SpectrogramImage(const Waveform &w) {
  dsp::Spectrogram spec = dsp::Stft(w);
  GrayImage img;
  img.width = spec.frames();
  img.height = dsp::kGanRows;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
  const Eigen::MatrixXd mag = spec.mag.topRows(dsp::kGanRows);
  const double peak = mag.size() > 0 ? mag.maxCoeff() : 0.0;
  if (!(peak > 0)) return img;
  const double top_db = 20.0 * std::log10(peak);
  for (int t = 0; t < img.width; ++t) {
    for (int f = 0; f < img.height; ++f) {
      const double m = mag(f, t);
      double level = 0;
      if (m > 0) level = (20.0 * std::log10(m) - (top_db - kSpecgramRangeDb)) / kSpecgramRangeDb;
      level = std::clamp(level, 0.0, 1.0);
      const int row = img.height - 1 - f;
      img.pixels[static_cast<std::size_t>(row) * img.width + t] =
          static_cast<std::uint8_t>(std::lround(255.0 * level));
    }
  }
  return img;
}

std::string EncodePgm(const GrayImage &img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char *>(img.pixels.data()), img.pixels.size());
  return out;
}

#ifdef CGANSE_HAVE_PNG

bool PngAvailable() { return true; }

namespace {

void PngAppend(png_structp png, png_bytep data, png_size_t n) {
  auto *out = static_cast<std::string *>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char *>(data), n);
}

void PngFlush(png_structp) {}

}  // namespace

std::string EncodePng(const GrayImage &img) {
  if (img.width < 1 || img.height < 1) throw std::invalid_argument("EncodePng: empty image");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw std::runtime_error("EncodePng: libpng init failed");
  png_infop info = png_create_info_struct(png);
  std::string out;
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("EncodePng: encoding failed");
  }
  png_set_write_fn(png, &out, PngAppend, PngFlush);
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < img.height; ++r)
    png_write_row(png, const_cast<png_bytep>(&img.pixels[static_cast<std::size_t>(r) * img.width]));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

#else

bool PngAvailable() { return false; }

std::string EncodePng(const GrayImage &) {
  throw std::runtime_error("EncodePng: built without libpng; write a .pgm instead");
}

#endif

void WriteImage(const std::string &path, const GrayImage &img) {
  const bool png = path.size() >= 4 && path.compare(path.size() - 4, 4, ".png") == 0;
  const std::string bytes = png ? EncodePng(img) : EncodePgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cganse::cli
