// src/asv/eer.cc

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

#include "cganse/asv/eer.h"

#include <algorithm>
#include <stdexcept>

namespace cganse::asv {

double Eer(const ScoreSet &scores) {
  if (scores.target.empty() || scores.impostor.empty())
    throw std::invalid_argument("Eer: empty score list");
  std::vector<double> tgt = scores.target, imp = scores.impostor;
  std::sort(tgt.begin(), tgt.end());
  std::sort(imp.begin(), imp.end());
  std::vector<double> thresholds = tgt;
  thresholds.insert(thresholds.end(), imp.begin(), imp.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const double nt = static_cast<double>(tgt.size()), ni = static_cast<double>(imp.size());
  auto rates = [&](double t, double *far, double *frr) {
    *far = static_cast<double>(imp.end() - std::lower_bound(imp.begin(), imp.end(), t)) / ni;
    *frr = static_cast<double>(std::lower_bound(tgt.begin(), tgt.end(), t) - tgt.begin()) / nt;
  };
  // Below every score FAR = 1, FRR = 0.
  double prev_far = 1.0, prev_frr = 0.0;
  for (double t : thresholds) {
    double far, frr;
    rates(t, &far, &frr);
    const double d = far - frr;
    if (d <= 0) {
      const double d0 = prev_far - prev_frr;
      const double a = d0 / (d0 - d);
      return prev_far + a * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  // Above every score FAR = 0, FRR = 1.
  const double d0 = prev_far - prev_frr;
  const double a = d0 / (d0 + 1.0);
  return prev_far + a * (0.0 - prev_far);
}

}  // namespace cganse::asv
