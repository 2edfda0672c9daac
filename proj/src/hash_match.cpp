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

#include "scc/hash_match.hpp"

#include <algorithm>
#include <cstring>

namespace scc {

namespace {

// CCITT CRC-16 step, polynomial 0x1021, used to mix row checksums into the
// bucket key so that row permutations map to different keys.
uint16_t crc16_step(uint16_t crc, uint8_t byte) {
  crc ^= static_cast<uint16_t>(byte) << 8;
  for (int i = 0; i < 8; ++i)
    crc = (crc & 0x8000) ? static_cast<uint16_t>((crc << 1) ^ 0x1021)
                         : static_cast<uint16_t>(crc << 1);
  return crc;
}

bool blocks_equal(const PlaneBuffer& plane, int ax, int ay, int bx, int by,
                  int n) {
  for (int r = 0; r < n; ++r)
    if (std::memcmp(plane.row(ay + r) + ax, plane.row(by + r) + bx, n) != 0)
      return false;
  return true;
}

}  // namespace

uint16_t BlockHashTable::key_at(const PlaneBuffer& plane, int x, int y) const {
  uint16_t key = 0xffff;
  for (int r = 0; r < block_size_; ++r) {
    const uint8_t* row = plane.row(y + r) + x;
    unsigned sum = 0;
    for (int c = 0; c < block_size_; ++c) sum += row[c];
    key = crc16_step(key, static_cast<uint8_t>(sum & 0xff));
  }
  return key;
}

void BlockHashTable::build(const PlaneBuffer& plane, int block_size) {
  block_size_ = block_size;
  width_ = plane.width();
  height_ = plane.height();
  buckets_.assign(1u << 16, {});
  if (width_ < block_size || height_ < block_size) return;
  // Rolling row sums keep the build linear in the sample count.
  std::vector<uint32_t> prefix(static_cast<size_t>(width_) + 1);
  std::vector<uint8_t> row_sum(static_cast<size_t>(width_) *
                               static_cast<size_t>(height_));
  for (int y = 0; y < height_; ++y) {
    const uint8_t* row = plane.row(y);
    prefix[0] = 0;
    for (int x = 0; x < width_; ++x) prefix[x + 1] = prefix[x] + row[x];
    for (int x = 0; x + block_size <= width_; ++x)
      row_sum[static_cast<size_t>(y) * width_ + x] =
          static_cast<uint8_t>((prefix[x + block_size] - prefix[x]) & 0xff);
  }
  for (int y = 0; y + block_size <= height_; ++y)
    for (int x = 0; x + block_size <= width_; ++x) {
      uint16_t key = 0xffff;
      for (int r = 0; r < block_size; ++r)
        key = crc16_step(key, row_sum[static_cast<size_t>(y + r) * width_ + x]);
      buckets_[key].push_back(Pos{x, y});
    }
}

std::vector<BlockHashTable::Pos> BlockHashTable::find_matches(
    const PlaneBuffer& plane, int qx, int qy, int cap) const {
  std::vector<Pos> out;
  if (cap <= 0 || block_size_ == 0) return out;
  if (qx < 0 || qy < 0 || qx + block_size_ > width_ ||
      qy + block_size_ > height_)
    return out;
  const std::vector<Pos>& bucket = buckets_[key_at(plane, qx, qy)];
  const int64_t qidx = static_cast<int64_t>(qy) * width_ + qx;
  // Buckets are raster-sorted; start at the first entry at or after the
  // query and walk outward, preferring earlier (already-coded) positions.
  auto split = std::lower_bound(
      bucket.begin(), bucket.end(), qidx, [this](const Pos& p, int64_t idx) {
        return static_cast<int64_t>(p.y) * width_ + p.x < idx;
      });
  for (auto it = split; it != bucket.begin() && (int)out.size() < cap;) {
    --it;
    if (blocks_equal(plane, it->x, it->y, qx, qy, block_size_))
      out.push_back(*it);
  }
  for (auto it = split; it != bucket.end() && (int)out.size() < cap; ++it) {
    if (it->x == qx && it->y == qy) continue;
    if (blocks_equal(plane, it->x, it->y, qx, qy, block_size_))
      out.push_back(*it);
  }
  return out;
}

size_t BlockHashTable::bucket_size(const PlaneBuffer& plane, int qx,
                                   int qy) const {
  if (block_size_ == 0 || qx < 0 || qy < 0 || qx + block_size_ > width_ ||
      qy + block_size_ > height_)
    return 0;
  return buckets_[key_at(plane, qx, qy)].size();
}

}  // namespace scc
