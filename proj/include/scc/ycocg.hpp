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

#ifndef SCC_YCOCG_HPP_
#define SCC_YCOCG_HPP_

#include <cstdint>

#include "scc/frame.hpp"

namespace scc {

// Shifts below are arithmetic; on negative values they floor, which is what
// makes the lifting pair exactly invertible.
struct ColorTriple {
  int y = 0;
  int co = 0;
  int cg = 0;
};

// Reversible lifting. For 8-bit inputs: y in [0,255], co/cg in [-255,255].
inline ColorTriple ycocg_lossless_forward(int r, int g, int b) {
  const int co = r - b;
  const int t = b + (co >> 1);
  const int cg = g - t;
  const int y = t + (cg >> 1);
  return {y, co, cg};
}

inline void ycocg_lossless_inverse(const ColorTriple& c, int* r, int* g,
                                   int* b) {
  const int t = c.y - (c.cg >> 1);
  *g = c.cg + t;
  *b = t - (c.co >> 1);
  *r = *b + c.co;
}

// Non-reversible matrix variant; inverse(forward(x)) is within +-1 per
// component for 8-bit inputs, with the inverse clipped to [0,255].
inline ColorTriple ycocg_lossy_forward(int r, int g, int b) {
  const int y = (r + 2 * g + b + 2) >> 2;
  const int co = (r - b) >> 1;
  const int cg = (2 * g - r - b + 2) >> 2;
  return {y, co, cg};
}

inline void ycocg_lossy_inverse(const ColorTriple& c, int* r, int* g, int* b) {
  *r = clip_u8(c.y + c.co - c.cg);
  *g = clip_u8(c.y + c.cg);
  *b = clip_u8(c.y - c.co - c.cg);
}

}  // namespace scc

#endif  // SCC_YCOCG_HPP_
