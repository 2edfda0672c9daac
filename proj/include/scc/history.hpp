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

#ifndef SCC_HISTORY_HPP_
#define SCC_HISTORY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace scc {

// Displacement of a block copy (also used for string copies). Points from
// the current block to its reference, so valid vectors address previously
// reconstructed samples.
struct BlockVector {
  int x = 0;
  int y = 0;
  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

struct HistoryEntry {
  BlockVector bv;
  int pos_x = 0;   // top-left of the block (or first pixel of the string)
  int pos_y = 0;   // that most recently used this vector
  int size = 0;    // luma samples covered by that block or string
  int occurrence = 1;
};

// Recency list of the last distinct copy vectors, most recent first.
// Re-using a vector moves it to the front, bumps its occurrence count and
// rewrites its position and size; beyond 8 distinct vectors the oldest
// entry is evicted.
class HistoryVectorTable {
 public:
  static constexpr int kCapacity = 8;

  void clear() { entries_.clear(); }
  void update(const BlockVector& bv, int pos_x, int pos_y, int size);
  const std::vector<HistoryEntry>& entries() const { return entries_; }
  uint64_t checksum() const;

 private:
  std::vector<HistoryEntry> entries_;
};

// Class-based candidate list derived from the history table relative to the
// current block position (luma coords of its top-left corner):
//   class 0  most recent entry covering more than 32 luma samples
//   class 1  most recent entry used more than once
//   class 2  most recent entry positioned strictly left  (dx < 0, dy == 0)
//   class 3  strictly above        (dx == 0, dy < 0)
//   class 4  above-left            (dx < 0,  dy < 0)
//   class 5  above-right           (dx > 0,  dy < 0)
//   class 6  below-left            (dx < 0,  dy > 0)
// A class without a qualifying entry has no candidate.
std::array<std::optional<BlockVector>, 7> classify_history(
    const HistoryVectorTable& table, int cur_x, int cur_y);

}  // namespace scc

#endif  // SCC_HISTORY_HPP_
