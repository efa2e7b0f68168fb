// cganse/dsp/fft.h

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

#ifndef CGANSE_DSP_FFT_H_
#define CGANSE_DSP_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace cganse::dsp {

// Real-input FFT of a fixed size backed by FFTW. Plans are created once per
// size under a lock; Forward/Inverse are safe to call concurrently.
class RealFft {
 public:
  explicit RealFft(int n);
  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  // in.size() <= n (zero padded); out gets n/2+1 bins.
  void Forward(std::span<const double> in, std::vector<std::complex<double>> *out) const;
  // Unnormalised inverse: Inverse(Forward(x)) = n * x.
  void Inverse(std::span<const std::complex<double>> in, std::vector<double> *out) const;

 private:
  int n_;
  void *forward_plan_;
  void *inverse_plan_;
};

}  // namespace cganse::dsp

#endif  // CGANSE_DSP_FFT_H_
