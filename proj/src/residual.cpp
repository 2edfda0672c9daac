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

#include "scc/residual.hpp"

namespace scc {

void bdpcm_forward(int32_t* v, int w, int h, bool horizontal) {
  if (horizontal) {
    for (int y = 0; y < h; ++y)
      for (int x = w - 1; x >= 1; --x) v[y * w + x] -= v[y * w + x - 1];
  } else {
    for (int y = h - 1; y >= 1; --y)
      for (int x = 0; x < w; ++x) v[y * w + x] -= v[(y - 1) * w + x];
  }
}

void bdpcm_inverse(int32_t* v, int w, int h, bool horizontal) {
  if (horizontal) {
    for (int y = 0; y < h; ++y)
      for (int x = 1; x < w; ++x) v[y * w + x] += v[y * w + x - 1];
  } else {
    for (int y = 1; y < h; ++y)
      for (int x = 0; x < w; ++x) v[y * w + x] += v[(y - 1) * w + x];
  }
}

void read_levels(BitReader& reader, int32_t* v, int w, int h) {
  const int tw = w < 4 ? w : 4;
  const int th = h < 4 ? h : 4;
  for (int sy = 0; sy < h; sy += th) {
    for (int sx = 0; sx < w; sx += tw) {
      const bool coded = reader.get_bit() != 0;
      if (!coded) {
        for (int y = 0; y < th; ++y)
          for (int x = 0; x < tw; ++x) v[(sy + y) * w + sx + x] = 0;
        continue;
      }
      for (int y = 0; y < th; ++y) {
        for (int x = 0; x < tw; ++x) {
          int32_t& out = v[(sy + y) * w + sx + x];
          if (reader.get_bit() == 0) {
            out = 0;
            continue;
          }
          const bool negative = reader.get_bit() != 0;
          uint32_t a = 1;
          if (reader.get_bit()) {               // gt1
            const uint32_t par = reader.get_bit();
            int rungs = 1;
            if (reader.get_bit()) {             // gt3
              ++rungs;
              if (reader.get_bit()) {           // gt5
                ++rungs;
                if (reader.get_bit()) {         // gt7
                  ++rungs;
                  if (reader.get_bit()) ++rungs;  // gt9
                }
              }
            }
            if (rungs == 5) {
              const uint32_t rem = reader.get_ue();
              a = 10 + par + 2 * rem;
            } else {
              a = 2 * static_cast<uint32_t>(rungs) + par;
            }
            if (a > kMaxLevelMagnitude)
              throw BitstreamError("residual level magnitude out of range");
          }
          out = negative ? -static_cast<int32_t>(a) : static_cast<int32_t>(a);
        }
      }
    }
  }
}

bool parity_infer_ts(const int32_t* v, int count) {
  int even_nonzero = 0;
  for (int i = 0; i < count; ++i)
    if (v[i] != 0 && (v[i] & 1) == 0) ++even_nonzero;
  return (even_nonzero & 1) != 0;
}

void parity_adjust_ts(int32_t* v, int count, bool want) {
  if (parity_infer_ts(v, count) == want) return;
  int last = -1;
  for (int i = 0; i < count; ++i)
    if (v[i] != 0) last = i;
  if (last < 0)
    throw std::invalid_argument("parity adjust needs a nonzero level");
  int32_t& lvl = v[last];
  if (lvl == 1 || lvl == -1) {
    lvl += (lvl > 0) ? 1 : -1;  // away from zero; keeps it significant
  } else {
    lvl += (lvl > 0) ? -1 : 1;  // toward zero
  }
}

}  // namespace scc
