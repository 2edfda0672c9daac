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

#ifndef SCC_RESIDUAL_HPP_
#define SCC_RESIDUAL_HPP_

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "scc/bitio.hpp"

namespace scc {

// How one residual block is carried. BDPCM variants imply transform skip.
enum class ResidualMode : uint8_t {
  kTransform = 0,
  kTs = 1,        // transform skip, plain levels
  kTsBdpcmH = 2,  // transform skip + horizontal level differences
  kTsBdpcmV = 3,  // transform skip + vertical level differences
};

inline bool is_transform_skip(ResidualMode m) {
  return m != ResidualMode::kTransform;
}

// In-place level differencing along rows (horizontal) or columns (vertical).
// The first entry of each row/column is kept; each later entry becomes the
// difference to its predecessor. Exact inverse via prefix sums.
void bdpcm_forward(int32_t* v, int w, int h, bool horizontal);
void bdpcm_inverse(int32_t* v, int w, int h, bool horizontal);

constexpr int32_t kMaxLevelMagnitude = (1 << 15) - 1;

// Transform-skip residual level syntax, also reused for quantized transform
// coefficients. The block is tiled into 4x4 sub-blocks (smaller at block
// sizes under 4), visited in raster order. Per sub-block: coded flag; then
// per position in raster order: significance; if significant: sign (1 =
// negative), greater-than-1; if so: parity, then the greater-than-3/5/7/9
// ladder; past 9 an exp-Golomb remainder.
//
// Magnitude map: 1 -> gt1=0. 2..9 -> 2k+par with k flags set among
// gt1,gt3,gt5,gt7 (gt9=0). >=10 -> all five flags set, value 10+par+2*rem.
template <typename Sink>
void write_levels(Sink& sink, const int32_t* v, int w, int h) {
  const int tw = w < 4 ? w : 4;
  const int th = h < 4 ? h : 4;
  for (int sy = 0; sy < h; sy += th) {
    for (int sx = 0; sx < w; sx += tw) {
      bool coded = false;
      for (int y = 0; y < th && !coded; ++y)
        for (int x = 0; x < tw; ++x)
          if (v[(sy + y) * w + sx + x] != 0) {
            coded = true;
            break;
          }
      sink.put_bit(coded ? 1 : 0);
      if (!coded) continue;
      for (int y = 0; y < th; ++y) {
        for (int x = 0; x < tw; ++x) {
          const int32_t value = v[(sy + y) * w + sx + x];
          if (value == 0) {
            sink.put_bit(0);
            continue;
          }
          sink.put_bit(1);
          sink.put_bit(value < 0 ? 1 : 0);
          const uint32_t a = static_cast<uint32_t>(std::abs(value));
          if (a > kMaxLevelMagnitude)
            throw std::invalid_argument("residual level out of range");
          sink.put_bit(a > 1);
          if (a <= 1) continue;
          sink.put_bit(a & 1);  // parity
          sink.put_bit(a > 3);
          if (a <= 3) continue;
          sink.put_bit(a > 5);
          if (a <= 5) continue;
          sink.put_bit(a > 7);
          if (a <= 7) continue;
          sink.put_bit(a > 9);
          if (a <= 9) continue;
          sink.put_ue((a - 10 - (a & 1)) / 2);
        }
      }
    }
  }
}

void read_levels(BitReader& reader, int32_t* v, int w, int h);

// Transform-skip inference from level parity: the block is flagged as
// transform-skipped when the count of even-valued nonzero levels is odd.
bool parity_infer_ts(const int32_t* v, int count);

// Forces the inferred flag to `want` by changing at most one level: the last
// nonzero one moves one step toward zero, or away from zero when it sits at
// +-1 (so it never vanishes). Requires at least one nonzero level.
void parity_adjust_ts(int32_t* v, int count, bool want);

}  // namespace scc

#endif  // SCC_RESIDUAL_HPP_
