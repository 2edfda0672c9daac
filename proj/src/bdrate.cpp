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

#include "scc/bdrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace scc {

namespace {

// Cubic through four (s, v) points, solved from the Vandermonde system with
// partial pivoting. Inputs are pre-centered, so conditioning is benign.
std::array<long double, 4> fit_cubic(const std::array<long double, 4>& s,
                                     const std::array<long double, 4>& v) {
  long double m[4][5];
  for (int r = 0; r < 4; ++r) {
    m[r][0] = 1.0L;
    m[r][1] = s[r];
    m[r][2] = s[r] * s[r];
    m[r][3] = s[r] * s[r] * s[r];
    m[r][4] = v[r];
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(static_cast<double>(m[r][col])) >
          std::fabs(static_cast<double>(m[pivot][col])))
        pivot = r;
    for (int c = 0; c < 5; ++c) std::swap(m[col][c], m[pivot][c]);
    if (m[col][col] == 0.0L)
      throw std::invalid_argument("degenerate rate-distortion curve");
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = m[r][col] / m[col][col];
      for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2],
          m[3][4] / m[3][3]};
}

long double integrate_cubic(const std::array<long double, 4>& a,
                            long double lo, long double hi) {
  auto anti = [&a](long double s) {
    return a[0] * s + a[1] * s * s / 2.0L + a[2] * s * s * s / 3.0L +
           a[3] * s * s * s * s / 4.0L;
  };
  return anti(hi) - anti(lo);
}

void validate_curve(std::vector<RdPoint>& curve) {
  if (curve.size() != 4)
    throw std::invalid_argument("each curve needs exactly four points");
  for (const RdPoint& p : curve) {
    if (!(p.bitrate > 0.0) || !std::isfinite(p.bitrate) ||
        !std::isfinite(p.psnr))
      throw std::invalid_argument("bitrates must be positive and finite");
  }
  std::sort(curve.begin(), curve.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.psnr < b.psnr; });
  for (int i = 1; i < 4; ++i)
    if (!(curve[i].psnr > curve[i - 1].psnr))
      throw std::invalid_argument("duplicate PSNR point in curve");
}

}  // namespace

double bd_rate_percent(std::vector<RdPoint> anchor, std::vector<RdPoint> test) {
  validate_curve(anchor);
  validate_curve(test);

  const long double lo =
      std::max<long double>(anchor.front().psnr, test.front().psnr);
  const long double hi =
      std::min<long double>(anchor.back().psnr, test.back().psnr);
  if (!(hi > lo))
    throw std::invalid_argument("rate-distortion curves do not overlap");

  // Center the PSNR axis to keep the Vandermonde solve well conditioned.
  long double mean = 0.0L;
  for (int i = 0; i < 4; ++i) mean += anchor[i].psnr + test[i].psnr;
  mean /= 8.0L;

  std::array<long double, 4> s{}, va{}, vt{};
  for (int i = 0; i < 4; ++i) {
    s[i] = anchor[i].psnr - mean;
    va[i] = std::log10(static_cast<long double>(anchor[i].bitrate));
  }
  const std::array<long double, 4> ca = fit_cubic(s, va);
  for (int i = 0; i < 4; ++i) {
    s[i] = test[i].psnr - mean;
    vt[i] = std::log10(static_cast<long double>(test[i].bitrate));
  }
  const std::array<long double, 4> ct = fit_cubic(s, vt);

  const long double a = lo - mean, b = hi - mean;
  const long double avg =
      (integrate_cubic(ct, a, b) - integrate_cubic(ca, a, b)) / (b - a);
  return static_cast<double>(
      (std::pow(10.0L, avg) - 1.0L) * 100.0L);
}

}  // namespace scc
