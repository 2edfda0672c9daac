// Copyright 2026 The sccodec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCC_BDRATE_HPP_
#define SCC_BDRATE_HPP_

#include <vector>

namespace scc {

struct RdPoint {
  double bitrate = 0.0;  // any positive rate unit; only ratios matter
  double psnr = 0.0;     // dB
};

// Average bitrate difference of `test` against `anchor` in percent,
// negative meaning `test` needs fewer bits for the same quality.
//
// Each curve must have exactly four points with positive bitrates and
// distinct PSNR values. A cubic in PSNR is fitted through the four
// (psnr, log10 bitrate) points of each curve, the difference is integrated
// in closed form over the PSNR interval covered by both curves, and the
// average log-ratio maps back through 10^x - 1. Throws
// std::invalid_argument for malformed input or non-overlapping curves.
double bd_rate_percent(std::vector<RdPoint> anchor, std::vector<RdPoint> test);

}  // namespace scc

#endif  // SCC_BDRATE_HPP_
