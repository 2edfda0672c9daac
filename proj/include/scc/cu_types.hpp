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

#ifndef SCC_CU_TYPES_HPP_
#define SCC_CU_TYPES_HPP_

#include <cstdint>
#include <vector>

namespace scc {

// Coding modes in bitstream order. The first four are always available;
// the rest appear in the mode list only when the matching tool flag is set.
enum class CuMode : uint8_t {
  kIntraDc = 0,
  kIntraPlanar,
  kIntraHor,
  kIntraVer,
  kIbc,
  kPalette,
  kStringCopy,
};

inline bool is_intra_mode(CuMode m) { return m <= CuMode::kIntraVer; }

// Per-4x4-cell map of coding decisions over one frame, used by the
// deblocking filter (CU boundaries, mode classes) and by mode statistics.
struct CuMap {
  int w4 = 0;
  int h4 = 0;
  std::vector<uint32_t> cu_id;
  std::vector<CuMode> mode;

  CuMap() = default;
  CuMap(int width, int height)
      : w4((width + 3) / 4),
        h4((height + 3) / 4),
        cu_id(static_cast<size_t>(w4) * h4, 0),
        mode(static_cast<size_t>(w4) * h4, CuMode::kIntraDc) {}

  size_t cell(int x, int y) const {
    return static_cast<size_t>(y / 4) * w4 + (x / 4);
  }
  void fill(int x, int y, int w, int h, uint32_t id, CuMode m) {
    for (int cy = y / 4; cy < (y + h) / 4; ++cy)
      for (int cx = x / 4; cx < (x + w) / 4; ++cx) {
        cu_id[static_cast<size_t>(cy) * w4 + cx] = id;
        mode[static_cast<size_t>(cy) * w4 + cx] = m;
      }
  }
};

}  // namespace scc

#endif  // SCC_CU_TYPES_HPP_
