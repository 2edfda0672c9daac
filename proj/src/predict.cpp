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

#include <bit>
#include <vector>

#include "codec_internal.hpp"

namespace scc {
namespace internal {

namespace {

// References: above[0..n] covers (px..px+n, py-1) including the top-right
// extension, left[0..n] covers (px-1, py..py+n) including the bottom-left
// extension. Unavailable entries are substituted scanning left[n] up to
// left[0], then above[0] across to above[n]: the first missing entry takes
// the first available one, later gaps repeat their predecessor; with no
// references at all everything becomes mid-gray.
void build_refs(const CodingCtx& ctx, int plane, int px, int py, int n,
                std::vector<int32_t>& above, std::vector<int32_t>& left) {
  const PlaneBuffer& pb = ctx.recon.planes[static_cast<size_t>(plane)];
  above.assign(static_cast<size_t>(n) + 1, -1);
  left.assign(static_cast<size_t>(n) + 1, -1);
  for (int i = 0; i <= n; ++i) {
    if (ctx.sample_available(plane, px + i, py - 1))
      above[static_cast<size_t>(i)] = pb.at(px + i, py - 1);
    if (ctx.sample_available(plane, px - 1, py + i))
      left[static_cast<size_t>(i)] = pb.at(px - 1, py + i);
  }
  // Single scan over the joined sequence.
  int32_t prev = -1;
  for (int i = n; i >= 0; --i)
    if (left[static_cast<size_t>(i)] >= 0) {
      prev = left[static_cast<size_t>(i)];
      break;
    }
  if (prev < 0)
    for (int i = 0; i <= n; ++i)
      if (above[static_cast<size_t>(i)] >= 0) {
        prev = above[static_cast<size_t>(i)];
        break;
      }
  if (prev < 0) prev = 128;
  for (int i = n; i >= 0; --i) {
    if (left[static_cast<size_t>(i)] < 0)
      left[static_cast<size_t>(i)] = prev;
    else
      prev = left[static_cast<size_t>(i)];
  }
  for (int i = 0; i <= n; ++i) {
    if (above[static_cast<size_t>(i)] < 0)
      above[static_cast<size_t>(i)] = prev;
    else
      prev = above[static_cast<size_t>(i)];
  }
}

}  // namespace

void predict_intra(const CodingCtx& ctx, int plane, CuMode mode, int px,
                   int py, int n, int32_t* out) {
  std::vector<int32_t> above, left;
  build_refs(ctx, plane, px, py, n, above, left);
  const int log2n = std::countr_zero(static_cast<unsigned>(n));
  switch (mode) {
    case CuMode::kIntraDc: {
      int32_t sum = 0;
      for (int i = 0; i < n; ++i)
        sum += above[static_cast<size_t>(i)] + left[static_cast<size_t>(i)];
      const int32_t dc = (sum + n) >> (log2n + 1);
      for (int i = 0; i < n * n; ++i) out[i] = dc;
      break;
    }
    case CuMode::kIntraPlanar: {
      const int32_t tr = above[static_cast<size_t>(n)];
      const int32_t bl = left[static_cast<size_t>(n)];
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
          const int32_t hor = (n - 1 - x) * left[static_cast<size_t>(y)] +
                              (x + 1) * tr;
          const int32_t ver = (n - 1 - y) * above[static_cast<size_t>(x)] +
                              (y + 1) * bl;
          out[y * n + x] = (hor + ver + n) >> (log2n + 1);
        }
      break;
    }
    case CuMode::kIntraHor:
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) out[y * n + x] = left[static_cast<size_t>(y)];
      break;
    default:  // kIntraVer
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
          out[y * n + x] = above[static_cast<size_t>(x)];
      break;
  }
}

}  // namespace internal
}  // namespace scc
