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

#ifndef SCC_DEBLOCK_HPP_
#define SCC_DEBLOCK_HPP_

#include "scc/cu_types.hpp"
#include "scc/frame.hpp"

namespace scc {

// Screen-content-aware deblocking: a large step across the boundary is
// treated as a real content edge and left untouched, and flat-sided
// boundaries get a weaker filter. Luma only, applied after the whole frame
// is reconstructed; reference sample memory keeps pre-filter samples, so
// the filter never feeds back into prediction.
struct DeblockParams {
  int t_edge = 64;  // |p0-q0| above this means content edge, skip
  int t_flat = 32;  // neighbor-difference bound for full strength
};

// Boundary strength for one sample line crossing a CU edge.
// p[0..2] walk away from the edge on one side, q[0..2] on the other.
// |p0-q0| > t_edge marks a content edge: strength 0, leave untouched.
// Otherwise start from 2 (every coding mode here is a screen-content mode)
// and subtract one per side whose neighbor differences exceed t_flat,
// flooring at 0.
int boundary_strength(const int p[3], const int q[3], CuMode mode_p,
                      CuMode mode_q, const DeblockParams& params);

// Filters one sample line in place given its strength. Strength 1 adjusts
// p0/q0 only; strength 2 also adjusts p1/q1. All corrections are computed
// from pre-filter values and clamped to +/-2 of them.
void filter_line(int p[3], int q[3], int bs);

// Applies the filter to all CU-boundary edges of the luma plane that lie on
// the 8x8 grid: one vertical pass, then one horizontal pass.
void deblock_frame(Frame* recon, const CuMap& map,
                   const DeblockParams& params = {});

}  // namespace scc

#endif  // SCC_DEBLOCK_HPP_
