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

#ifndef SCC_RSM_HPP_
#define SCC_RSM_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "scc/frame.hpp"

namespace scc {

// Reference sample memory for intra block copy: one 128x128 luma CTU worth
// of storage organized as four 64x64 regions. While a CTU is coded, each
// region holds either the co-located region of the CTU to its left or, once
// coding enters the region, the in-progress samples of the current CTU.
// Entering a region evicts the left-CTU content, so total occupancy never
// exceeds one CTU (16384 luma samples).
//
// Storage is direct-mapped by picture coordinates modulo 128; validity is
// tracked per 4x4 cell plus a per-region state and picture-tile origin.
class ReferenceSampleMemory {
 public:
  enum class RegionState : uint8_t { kEmpty, kLeftCtu, kCurrent };

  ReferenceSampleMemory() = default;
  ReferenceSampleMemory(ChromaFormat chroma, int pic_w, int pic_h);

  // Relabels current-CTU regions as left-CTU content (or empties everything
  // at the start of a CTU row) before the CTU at (ctu_x, ctu_y) is coded.
  void begin_ctu(int ctu_x, int ctu_y);

  // Ensures the region holding luma position (x, y) of the current CTU has
  // been entered (evicting the left-CTU tile stored there). Called before
  // each CU is coded.
  void prepare_region(int x, int y);

  // True when every 4x4 cell the luma rectangle touches holds valid
  // reference samples. Positions outside the picture are invalid. Cells of
  // the current CU are unwritten and therefore invalid, which also rules out
  // self-referencing copies.
  bool valid_rect(int x, int y, int w, int h) const;

  // Same, for a chroma-plane rectangle (chroma coordinates).
  bool valid_chroma_rect(int cx, int cy, int cw, int ch) const;

  // Copies reconstructed (pre-deblocking) samples of the CU rectangle into
  // the memory and marks its cells valid.
  void write_block(const Frame& recon, int x, int y, int w, int h);

  // Checked fetches; they re-verify cell validity and throw BitstreamError
  // if a non-validated address is ever requested.
  uint8_t luma_at(int x, int y) const;
  uint8_t chroma_at(int plane, int cx, int cy) const;

  RegionState region_state(int region) const { return regions_[region].state; }
  int occupancy() const;          // valid luma samples currently held
  uint64_t fetch_count() const { return fetches_; }

 private:
  struct Region {
    RegionState state = RegionState::kEmpty;
    int origin_x = -1;  // picture coords of the 64x64 tile mirrored here
    int origin_y = -1;
  };

 public:
  // Captures one region (samples, cell bits, all region states) so encoder
  // mode trials can roll back. Any CU no larger than 64 touches exactly one
  // region, which keeps these snapshots small.
  struct RegionSnapshot {
    int region = 0;
    std::array<Region, 4> regions;
    std::vector<uint8_t> luma, cb, cr;
    std::array<uint8_t, 16 * 16> cells{};
  };
  RegionSnapshot snapshot_region(int region) const;
  void restore_region(const RegionSnapshot& snap);

  // Region index for a luma sample position. Size-aligned CUs of 64 or less
  // fit entirely inside the region of their top-left corner.
  static int region_of(int x, int y) {
    return ((y >> 6) & 1) * 2 + ((x >> 6) & 1);
  }

 private:
  bool cell_valid(int x, int y) const;  // luma sample position
  void clear_region_cells(int region);

  ChromaFormat chroma_ = ChromaFormat::k420;
  int pic_w_ = 0, pic_h_ = 0;
  int ctu_x_ = -1, ctu_y_ = -1;
  std::array<Region, 4> regions_{};
  std::array<uint8_t, 32 * 32> cell_written_{};  // 4x4 luma cells, local
  std::vector<uint8_t> luma_;                    // 128*128
  std::vector<uint8_t> cb_, cr_;                 // chroma-format sized
  mutable uint64_t fetches_ = 0;
};

}  // namespace scc

#endif  // SCC_RSM_HPP_
