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

#ifndef SCC_PALETTE_HPP_
#define SCC_PALETTE_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "scc/bitio.hpp"

namespace scc {

// One palette color. Streams with joint palettes (4:4:4) use all three
// components; luma-only palettes (4:2:0, monochrome) use component 0 and
// keep the others zero so plain equality works for dedup.
using PaletteEntry = std::array<uint8_t, 3>;

// Sliding predictor of recently used palette colors, most recent palette
// first. Reset at each CTU row; updated only when a palette CU is coded.
class PalettePredictor {
 public:
  static constexpr int kCapacity = 63;

  void clear() { entries_.clear(); }
  const std::vector<PaletteEntry>& entries() const { return entries_; }

  // New predictor = current palette, then previous entries not in it,
  // truncated to capacity.
  void apply(const std::vector<PaletteEntry>& palette);
  uint64_t checksum() const;

 private:
  std::vector<PaletteEntry> entries_;
};

struct DerivedPalette {
  std::vector<PaletteEntry> palette;   // reused (predictor order) then new
  std::vector<int> reuse_indices;      // ascending indices into predictor
  std::vector<PaletteEntry> new_entries;
};

// Chooses up to `max_size` block colors by exact histogram, most frequent
// first (ties broken by smaller component values). Colors present in the
// predictor are placed first, in predictor order, so only their indices
// need coding.
DerivedPalette derive_palette(const std::vector<PaletteEntry>& pixels,
                              const PalettePredictor& predictor,
                              int max_size = 31);

// Horizontal traverse scan: even rows left-to-right, odd rows right-to-left.
inline std::pair<int, int> traverse_pos(int i, int w) {
  const int y = i / w;
  const int x = i % w;
  return {(y & 1) ? w - 1 - x : x, y};
}

// Index-map run coding over the traverse scan. An index equal to
// palette_size marks an escape sample. Runs either repeat one index or copy
// each position's index from the row above; the copy-above type bit is only
// signaled where copy-above is possible (row >= 1 and the previous run was
// not itself copy-above, which would have been extended otherwise).
template <typename Sink>
void write_index_map(Sink& sink, const uint8_t* idx, int w, int h,
                     int palette_size) {
  (void)palette_size;
  const int n = w * h;
  auto at = [&](int i) {
    auto [x, y] = traverse_pos(i, w);
    return idx[y * w + x];
  };
  auto above = [&](int i) {
    auto [x, y] = traverse_pos(i, w);
    return idx[(y - 1) * w + x];
  };
  int pos = 0;
  bool prev_ca = false;
  while (pos < n) {
    const bool can_above = pos >= w && !prev_ca;
    int len_ci = 1;
    while (pos + len_ci < n && at(pos + len_ci) == at(pos)) ++len_ci;
    int len_ca = 0;
    if (can_above)
      while (pos + len_ca < n && at(pos + len_ca) == above(pos + len_ca))
        ++len_ca;
    const bool use_ca = can_above && len_ca >= len_ci;
    if (can_above) sink.put_bit(use_ca ? 1 : 0);
    if (use_ca) {
      sink.put_ue(static_cast<uint32_t>(len_ca - 1));
      pos += len_ca;
      prev_ca = true;
    } else {
      sink.put_ue(at(pos));
      sink.put_ue(static_cast<uint32_t>(len_ci - 1));
      pos += len_ci;
      prev_ca = false;
    }
  }
}

void read_index_map(BitReader& reader, uint8_t* idx, int w, int h,
                    int palette_size);

}  // namespace scc

#endif  // SCC_PALETTE_HPP_
