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

#ifndef SCC_HASH_MATCH_HPP_
#define SCC_HASH_MATCH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "scc/frame.hpp"

namespace scc {

// Exact-match accelerator over one plane: every position that can host a
// square block of the configured size is bucketed by a 16-bit key computed
// from per-row sample sums. Lookups verify candidates sample-for-sample, so
// reported matches are always exact; the hash only prunes.
class BlockHashTable {
 public:
  struct Pos {
    int x = 0;
    int y = 0;
  };

  // Builds the table over `plane` for blocks of `block_size` x `block_size`
  // (8 or 16 are the sizes the encoder uses). Positions are inserted in
  // raster order, so buckets are sorted by y*width+x.
  void build(const PlaneBuffer& plane, int block_size);

  int block_size() const { return block_size_; }

  // Returns up to `cap` positions whose block content equals the block at
  // (qx, qy) in `plane` (the plane the table was built over), excluding
  // (qx, qy) itself. Positions preceding the query in raster order come
  // first, nearest first; later positions follow if the cap allows.
  std::vector<Pos> find_matches(const PlaneBuffer& plane, int qx, int qy,
                                int cap) const;

  // Number of positions sharing the key of the block at (qx, qy); an upper
  // bound on candidate work, exposed for tests.
  size_t bucket_size(const PlaneBuffer& plane, int qx, int qy) const;

 private:
  uint16_t key_at(const PlaneBuffer& plane, int x, int y) const;

  int block_size_ = 0;
  int width_ = 0;
  int height_ = 0;
  std::vector<std::vector<Pos>> buckets_;
};

}  // namespace scc

#endif  // SCC_HASH_MATCH_HPP_
