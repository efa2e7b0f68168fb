// cganse/asv/eer.h

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

#ifndef CGANSE_ASV_EER_H_
#define CGANSE_ASV_EER_H_

#include <vector>

namespace cganse::asv {

struct ScoreSet {
  std::vector<double> target;
  std::vector<double> impostor;
};

// Equal error rate from a threshold sweep over the pooled scores with
// FAR = P(impostor >= t), FRR = P(target < t), interpolated linearly where
// FAR - FRR changes sign.
double Eer(const ScoreSet &scores);

}  // namespace cganse::asv

#endif  // CGANSE_ASV_EER_H_
