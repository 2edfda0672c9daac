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

#ifndef SCC_QUANT_HPP_
#define SCC_QUANT_HPP_

#include <cmath>
#include <cstdint>

namespace scc {

// Uniform scalar quantizer with step 2^((qp-4)/6); qp=4 is the identity on
// integers. The step is assembled from a fixed 6-entry mantissa table and
// ldexp so every platform computes the same doubles.
struct QuantParams {
  int qp = 27;           // 0..51
  bool lossless = false;  // bypasses quantization (and the transform)
};

inline double quant_step(int qp) {
  static constexpr double kSixth[6] = {
      1.0,
      1.122462048309373,   // 2^(1/6)
      1.2599210498948732,  // 2^(2/6)
      1.4142135623730951,  // 2^(3/6)
      1.5874010519681994,  // 2^(4/6)
      1.7817974362806785,  // 2^(5/6)
  };
  const int e = qp - 4;
  int q = e / 6, r = e % 6;
  if (r < 0) {
    r += 6;
    --q;
  }
  return std::ldexp(kSixth[r], q);
}

// scale_log2 folds an extra power of two into the step so transform-domain
// values (64x orthonormal) quantize in sample-energy units.
inline int32_t quantize(int32_t x, const QuantParams& qp, int scale_log2 = 0) {
  if (qp.lossless) return x;
  const double step = std::ldexp(quant_step(qp.qp), scale_log2);
  const double level = std::floor(std::abs(static_cast<double>(x)) / step + 0.5);
  const auto mag = static_cast<int32_t>(level);
  return x < 0 ? -mag : mag;
}

inline int32_t dequantize(int32_t level, const QuantParams& qp,
                          int scale_log2 = 0) {
  if (qp.lossless) return level;
  const double step = std::ldexp(quant_step(qp.qp), scale_log2);
  return static_cast<int32_t>(std::lround(level * step));
}

}  // namespace scc

#endif  // SCC_QUANT_HPP_
