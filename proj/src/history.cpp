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

#include "scc/history.hpp"

namespace scc {

void HistoryVectorTable::update(const BlockVector& bv, int pos_x, int pos_y,
                                int size) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].bv == bv) {
      HistoryEntry e = entries_[i];
      e.occurrence += 1;
      e.pos_x = pos_x;
      e.pos_y = pos_y;
      e.size = size;
      entries_.erase(entries_.begin() + static_cast<ptrdiff_t>(i));
      entries_.insert(entries_.begin(), e);
      return;
    }
  }
  entries_.insert(entries_.begin(), HistoryEntry{bv, pos_x, pos_y, size, 1});
  if (entries_.size() > kCapacity) entries_.pop_back();
}

uint64_t HistoryVectorTable::checksum() const {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (i * 8)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const HistoryEntry& e : entries_) {
    mix(static_cast<uint64_t>(static_cast<int64_t>(e.bv.x)));
    mix(static_cast<uint64_t>(static_cast<int64_t>(e.bv.y)));
    mix(static_cast<uint64_t>(static_cast<int64_t>(e.pos_x)));
    mix(static_cast<uint64_t>(static_cast<int64_t>(e.pos_y)));
    mix(static_cast<uint64_t>(e.size));
    mix(static_cast<uint64_t>(e.occurrence));
  }
  return h;
}

std::array<std::optional<BlockVector>, 7> classify_history(
    const HistoryVectorTable& table, int cur_x, int cur_y) {
  std::array<std::optional<BlockVector>, 7> classes{};
  for (const HistoryEntry& e : table.entries()) {
    const int dx = e.pos_x - cur_x;
    const int dy = e.pos_y - cur_y;
    int spatial = -1;
    if (dy == 0 && dx < 0) spatial = 2;
    else if (dx == 0 && dy < 0) spatial = 3;
    else if (dx < 0 && dy < 0) spatial = 4;
    else if (dx > 0 && dy < 0) spatial = 5;
    else if (dx < 0 && dy > 0) spatial = 6;
    if (e.size > 32 && !classes[0]) classes[0] = e.bv;
    if (e.occurrence > 1 && !classes[1]) classes[1] = e.bv;
    if (spatial >= 0 && !classes[spatial]) classes[spatial] = e.bv;
  }
  return classes;
}

}  // namespace scc
