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

#include "scc/deblock.hpp"

#include <algorithm>
#include <cstdlib>

namespace scc {

namespace {

bool side_flat(const int s[3], int t_flat) {
  return std::max(std::abs(s[0] - s[1]), std::abs(s[1] - s[2])) <= t_flat;
}

int clamp_step(int filtered, int original) {
  const int lo = std::max(0, original - 2);
  const int hi = std::min(255, original + 2);
  return std::clamp(filtered, lo, hi);
}

}  // namespace

int boundary_strength(const int p[3], const int q[3], CuMode mode_p,
                      CuMode mode_q, const DeblockParams& params) {
  if (std::abs(p[0] - q[0]) > params.t_edge) return 0;
  (void)mode_p;
  (void)mode_q;
  int bs = 2;
  if (!side_flat(p, params.t_flat)) --bs;
  if (!side_flat(q, params.t_flat)) --bs;
  return bs;
}

void filter_line(int p[3], int q[3], int bs) {
  if (bs <= 0) return;
  const int p0 = p[0], p1 = p[1], p2 = p[2];
  const int q0 = q[0], q1 = q[1], q2 = q[2];
  p[0] = clamp_step((p1 + 2 * p0 + q0 + 2) >> 2, p0);
  q[0] = clamp_step((q1 + 2 * q0 + p0 + 2) >> 2, q0);
  if (bs >= 2) {
    p[1] = clamp_step((p2 + 2 * p1 + p0 + 2) >> 2, p1);
    q[1] = clamp_step((q2 + 2 * q1 + q0 + 2) >> 2, q1);
  }
}

void deblock_frame(Frame* recon, const CuMap& map,
                   const DeblockParams& params) {
  PlaneBuffer& luma = recon->planes[0];
  const int w = luma.width(), h = luma.height();

  // Vertical edges first. The 8x8 grid leaves at least 8 samples between
  // filtered edges while the filter reaches only 2, so lines never interact
  // within a pass.
  for (int x = 8; x < w; x += 8) {
    for (int y = 0; y < h; ++y) {
      if (map.cu_id[map.cell(x - 1, y)] == map.cu_id[map.cell(x, y)]) continue;
      int p[3] = {luma.at(x - 1, y), luma.at(x - 2, y), luma.at(x - 3, y)};
      int q[3] = {luma.at(x, y), luma.at(x + 1, y), luma.at(x + 2, y)};
      const int bs =
          boundary_strength(p, q, map.mode[map.cell(x - 1, y)],
                            map.mode[map.cell(x, y)], params);
      filter_line(p, q, bs);
      luma.set(x - 1, y, static_cast<uint8_t>(p[0]));
      luma.set(x - 2, y, static_cast<uint8_t>(p[1]));
      luma.set(x, y, static_cast<uint8_t>(q[0]));
      luma.set(x + 1, y, static_cast<uint8_t>(q[1]));
    }
  }
  for (int y = 8; y < h; y += 8) {
    for (int x = 0; x < w; ++x) {
      if (map.cu_id[map.cell(x, y - 1)] == map.cu_id[map.cell(x, y)]) continue;
      int p[3] = {luma.at(x, y - 1), luma.at(x, y - 2), luma.at(x, y - 3)};
      int q[3] = {luma.at(x, y), luma.at(x, y + 1), luma.at(x, y + 2)};
      const int bs =
          boundary_strength(p, q, map.mode[map.cell(x, y - 1)],
                            map.mode[map.cell(x, y)], params);
      filter_line(p, q, bs);
      luma.set(x, y - 1, static_cast<uint8_t>(p[0]));
      luma.set(x, y - 2, static_cast<uint8_t>(p[1]));
      luma.set(x, y, static_cast<uint8_t>(q[0]));
      luma.set(x, y + 1, static_cast<uint8_t>(q[1]));
    }
  }
}

}  // namespace scc
