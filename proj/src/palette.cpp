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

#include "scc/palette.hpp"

#include <algorithm>
#include <map>

#include "scc/errors.hpp"

namespace scc {

void PalettePredictor::apply(const std::vector<PaletteEntry>& palette) {
  std::vector<PaletteEntry> next = palette;
  for (const PaletteEntry& old : entries_) {
    if (static_cast<int>(next.size()) >= kCapacity) break;
    if (std::find(palette.begin(), palette.end(), old) == palette.end())
      next.push_back(old);
  }
  if (static_cast<int>(next.size()) > kCapacity) next.resize(kCapacity);
  entries_ = std::move(next);
}

uint64_t PalettePredictor::checksum() const {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (const PaletteEntry& e : entries_)
    for (uint8_t c : e) {
      h ^= c;
      h *= 1099511628211ull;
    }
  return h;
}

DerivedPalette derive_palette(const std::vector<PaletteEntry>& pixels,
                              const PalettePredictor& predictor,
                              int max_size) {
  // Exact histogram; std::map iterates value-ascending, and the stable sort
  // preserves that order among equal counts.
  std::map<PaletteEntry, int> hist;
  for (const PaletteEntry& p : pixels) ++hist[p];
  std::vector<std::pair<PaletteEntry, int>> ranked(hist.begin(), hist.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  if (static_cast<int>(ranked.size()) > max_size) ranked.resize(max_size);

  DerivedPalette out;
  std::vector<PaletteEntry> chosen;
  chosen.reserve(ranked.size());
  for (const auto& [entry, count] : ranked) chosen.push_back(entry);

  const std::vector<PaletteEntry>& pred = predictor.entries();
  std::vector<bool> reused(chosen.size(), false);
  for (int j = 0; j < static_cast<int>(pred.size()); ++j) {
    auto it = std::find(chosen.begin(), chosen.end(), pred[j]);
    if (it == chosen.end()) continue;
    out.reuse_indices.push_back(j);
    out.palette.push_back(pred[j]);
    reused[static_cast<size_t>(it - chosen.begin())] = true;
  }
  for (size_t i = 0; i < chosen.size(); ++i)
    if (!reused[i]) out.new_entries.push_back(chosen[i]);
  out.palette.insert(out.palette.end(), out.new_entries.begin(),
                     out.new_entries.end());
  return out;
}

void read_index_map(BitReader& reader, uint8_t* idx, int w, int h,
                    int palette_size) {
  const int n = w * h;
  int pos = 0;
  bool prev_ca = false;
  while (pos < n) {
    const bool can_above = pos >= w && !prev_ca;
    const bool use_ca = can_above && reader.get_bit() != 0;
    if (use_ca) {
      const uint32_t run = reader.get_ue() + 1;
      if (pos + static_cast<int>(run) > n)
        throw BitstreamError("palette run exceeds block");
      for (uint32_t k = 0; k < run; ++k) {
        auto [x, y] = traverse_pos(pos + static_cast<int>(k), w);
        idx[y * w + x] = idx[(y - 1) * w + x];
      }
      pos += static_cast<int>(run);
      prev_ca = true;
    } else {
      const uint32_t v = reader.get_ue();
      if (v > static_cast<uint32_t>(palette_size))
        throw BitstreamError("palette index out of range");
      const uint32_t run = reader.get_ue() + 1;
      if (pos + static_cast<int>(run) > n)
        throw BitstreamError("palette run exceeds block");
      for (uint32_t k = 0; k < run; ++k) {
        auto [x, y] = traverse_pos(pos + static_cast<int>(k), w);
        idx[y * w + x] = static_cast<uint8_t>(v);
      }
      pos += static_cast<int>(run);
      prev_ca = false;
    }
  }
}

}  // namespace scc
