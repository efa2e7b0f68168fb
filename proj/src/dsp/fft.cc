// src/dsp/fft.cc

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

#include "cganse/dsp/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace cganse::dsp {

namespace {

std::mutex &PlanMutex() {
  static std::mutex m;
  return m;
}

std::pair<fftw_plan, fftw_plan> PlansFor(int n) {
  static std::map<int, std::pair<fftw_plan, fftw_plan>> cache;
  std::lock_guard<std::mutex> lock(PlanMutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> real(n);
  std::vector<std::complex<double>> cplx(n / 2 + 1);
  auto *c = reinterpret_cast<fftw_complex *>(cplx.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan fwd = fftw_plan_dft_r2c_1d(n, real.data(), c, flags);
  fftw_plan inv = fftw_plan_dft_c2r_1d(n, c, real.data(), flags);
  if (fwd == nullptr || inv == nullptr) throw std::runtime_error("fft: plan creation failed");
  cache.emplace(n, std::make_pair(fwd, inv));
  return {fwd, inv};
}

}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("fft: size must be positive and even");
  auto plans = PlansFor(n);
  forward_plan_ = plans.first;
  inverse_plan_ = plans.second;
}

void RealFft::Forward(std::span<const double> in,
                      std::vector<std::complex<double>> *out) const {
  if (static_cast<int>(in.size()) > n_) throw std::invalid_argument("fft: input longer than size");
  std::vector<double> buf(n_, 0.0);
  std::copy(in.begin(), in.end(), buf.begin());
  out->assign(bins(), {});
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), buf.data(),
                       reinterpret_cast<fftw_complex *>(out->data()));
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::vector<double> *out) const {
  if (static_cast<int>(in.size()) != bins()) throw std::invalid_argument("fft: wrong bin count");
  // c2r overwrites its input.
  std::vector<std::complex<double>> buf(in.begin(), in.end());
  out->assign(n_, 0.0);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex *>(buf.data()), out->data());
}

}  // namespace cganse::dsp
