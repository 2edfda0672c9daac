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

#include "scc/rsm.hpp"

#include <algorithm>
#include <bit>

#include "scc/errors.hpp"

namespace scc {

ReferenceSampleMemory::ReferenceSampleMemory(ChromaFormat chroma, int pic_w,
                                            int pic_h)
    : chroma_(chroma), pic_w_(pic_w), pic_h_(pic_h) {
  luma_.assign(128 * 128, 0);
  if (chroma == ChromaFormat::k420) {
    cb_.assign(64 * 64, 0);
    cr_.assign(64 * 64, 0);
  } else if (chroma == ChromaFormat::k444) {
    cb_.assign(128 * 128, 0);
    cr_.assign(128 * 128, 0);
  }
}

void ReferenceSampleMemory::clear_region_cells(int region) {
  const int x0 = (region & 1) * 16;
  const int y0 = (region >> 1) * 16;
  for (int y = y0; y < y0 + 16; ++y)
    std::fill_n(cell_written_.data() + y * 32 + x0, 16, uint8_t{0});
}

void ReferenceSampleMemory::begin_ctu(int ctu_x, int ctu_y) {
  ctu_x_ = ctu_x;
  ctu_y_ = ctu_y;
  for (int r = 0; r < 4; ++r) {
    Region& reg = regions_[r];
    if (ctu_x == 0 || reg.state != RegionState::kCurrent) {
      // Row start, or the region was never entered while the previous CTU
      // was coded; its content is stale.
      reg.state = RegionState::kEmpty;
      reg.origin_x = reg.origin_y = -1;
      clear_region_cells(r);
    } else {
      // Keeps samples and per-cell validity; the region now mirrors the
      // co-located tile of the CTU to the left.
      reg.state = RegionState::kLeftCtu;
    }
  }
}

void ReferenceSampleMemory::prepare_region(int x, int y) {
  const int r = region_of(x, y);
  Region& reg = regions_[r];
  const int ox = ctu_x_ + ((x - ctu_x_) & ~63);
  const int oy = ctu_y_ + ((y - ctu_y_) & ~63);
  if (reg.state == RegionState::kCurrent) return;
  reg.state = RegionState::kCurrent;
  reg.origin_x = ox;
  reg.origin_y = oy;
  clear_region_cells(r);
}

bool ReferenceSampleMemory::cell_valid(int x, int y) const {
  if (x < 0 || y < 0 || x >= pic_w_ || y >= pic_h_) return false;
  const Region& reg = regions_[region_of(x, y)];
  if (reg.state == RegionState::kEmpty) return false;
  if (reg.origin_x != (x & ~63) || reg.origin_y != (y & ~63)) return false;
  return cell_written_[((y & 127) >> 2) * 32 + ((x & 127) >> 2)] != 0;
}

bool ReferenceSampleMemory::valid_rect(int x, int y, int w, int h) const {
  if (w <= 0 || h <= 0) return false;
  if (x < 0 || y < 0 || x + w > pic_w_ || y + h > pic_h_) return false;
  for (int cy = y & ~3; cy < y + h; cy += 4)
    for (int cx = x & ~3; cx < x + w; cx += 4)
      if (!cell_valid(cx, cy)) return false;
  return true;
}

bool ReferenceSampleMemory::valid_chroma_rect(int cx, int cy, int cw,
                                              int ch) const {
  if (chroma_ == ChromaFormat::kMono) return true;
  if (chroma_ == ChromaFormat::k444) return valid_rect(cx, cy, cw, ch);
  const int cpw = chroma_width(pic_w_, chroma_);
  const int cph = chroma_height(pic_h_, chroma_);
  if (cw <= 0 || ch <= 0) return false;
  if (cx < 0 || cy < 0 || cx + cw > cpw || cy + ch > cph) return false;
  // A chroma sample (u, v) is stored alongside luma cell (u*2/4, v*2/4).
  for (int v = cy; v < cy + ch; ++v)
    for (int u = cx; u < cx + cw; ++u)
      if (!cell_valid((u << 1) & ~3, (v << 1) & ~3)) return false;
  return true;
}

void ReferenceSampleMemory::write_block(const Frame& recon, int x, int y,
                                        int w, int h) {
  for (int sy = y; sy < y + h; ++sy) {
    const uint8_t* src = recon.planes[0].row(sy) + x;
    uint8_t* dst = luma_.data() + (sy & 127) * 128 + (x & 127);
    std::copy_n(src, w, dst);
  }
  if (chroma_ == ChromaFormat::k420) {
    for (int plane = 1; plane <= 2; ++plane) {
      std::vector<uint8_t>& mem = plane == 1 ? cb_ : cr_;
      for (int sy = y / 2; sy < (y + h) / 2; ++sy) {
        const uint8_t* src = recon.planes[plane].row(sy) + x / 2;
        std::copy_n(src, w / 2, mem.data() + (sy & 63) * 64 + ((x / 2) & 63));
      }
    }
  } else if (chroma_ == ChromaFormat::k444) {
    for (int plane = 1; plane <= 2; ++plane) {
      std::vector<uint8_t>& mem = plane == 1 ? cb_ : cr_;
      for (int sy = y; sy < y + h; ++sy) {
        const uint8_t* src = recon.planes[plane].row(sy) + x;
        std::copy_n(src, w, mem.data() + (sy & 127) * 128 + (x & 127));
      }
    }
  }
  for (int cy = y >> 2; cy <= (y + h - 1) >> 2; ++cy)
    for (int cx = x >> 2; cx <= (x + w - 1) >> 2; ++cx)
      cell_written_[(cy & 31) * 32 + (cx & 31)] = 1;
}

uint8_t ReferenceSampleMemory::luma_at(int x, int y) const {
  ++fetches_;
  if (!cell_valid(x, y))
    throw BitstreamError("reference fetch outside valid sample memory");
  return luma_[(y & 127) * 128 + (x & 127)];
}

uint8_t ReferenceSampleMemory::chroma_at(int plane, int cx, int cy) const {
  ++fetches_;
  const std::vector<uint8_t>& mem = plane == 1 ? cb_ : cr_;
  if (chroma_ == ChromaFormat::k420) {
    if (!cell_valid((cx << 1) & ~3, (cy << 1) & ~3))
      throw BitstreamError("chroma reference fetch outside valid memory");
    return mem[(cy & 63) * 64 + (cx & 63)];
  }
  if (!cell_valid(cx, cy))
    throw BitstreamError("chroma reference fetch outside valid memory");
  return mem[(cy & 127) * 128 + (cx & 127)];
}

ReferenceSampleMemory::RegionSnapshot ReferenceSampleMemory::snapshot_region(
    int region) const {
  RegionSnapshot snap;
  snap.region = region;
  snap.regions = regions_;
  const int lx = (region & 1) * 64, ly = (region >> 1) * 64;
  snap.luma.resize(64 * 64);
  for (int r = 0; r < 64; ++r)
    std::copy_n(luma_.data() + (ly + r) * 128 + lx, 64,
                snap.luma.data() + r * 64);
  if (chroma_ == ChromaFormat::k420) {
    snap.cb.resize(32 * 32);
    snap.cr.resize(32 * 32);
    const int cx = (region & 1) * 32, cy = (region >> 1) * 32;
    for (int r = 0; r < 32; ++r) {
      std::copy_n(cb_.data() + (cy + r) * 64 + cx, 32, snap.cb.data() + r * 32);
      std::copy_n(cr_.data() + (cy + r) * 64 + cx, 32, snap.cr.data() + r * 32);
    }
  } else if (chroma_ == ChromaFormat::k444) {
    snap.cb.resize(64 * 64);
    snap.cr.resize(64 * 64);
    for (int r = 0; r < 64; ++r) {
      std::copy_n(cb_.data() + (ly + r) * 128 + lx, 64,
                  snap.cb.data() + r * 64);
      std::copy_n(cr_.data() + (ly + r) * 128 + lx, 64,
                  snap.cr.data() + r * 64);
    }
  }
  const int gx = (region & 1) * 16, gy = (region >> 1) * 16;
  for (int r = 0; r < 16; ++r)
    std::copy_n(cell_written_.data() + (gy + r) * 32 + gx, 16,
                snap.cells.data() + r * 16);
  return snap;
}

void ReferenceSampleMemory::restore_region(const RegionSnapshot& snap) {
  const int region = snap.region;
  regions_ = snap.regions;
  const int lx = (region & 1) * 64, ly = (region >> 1) * 64;
  for (int r = 0; r < 64; ++r)
    std::copy_n(snap.luma.data() + r * 64, 64,
                luma_.data() + (ly + r) * 128 + lx);
  if (chroma_ == ChromaFormat::k420) {
    const int cx = (region & 1) * 32, cy = (region >> 1) * 32;
    for (int r = 0; r < 32; ++r) {
      std::copy_n(snap.cb.data() + r * 32, 32, cb_.data() + (cy + r) * 64 + cx);
      std::copy_n(snap.cr.data() + r * 32, 32, cr_.data() + (cy + r) * 64 + cx);
    }
  } else if (chroma_ == ChromaFormat::k444) {
    for (int r = 0; r < 64; ++r) {
      std::copy_n(snap.cb.data() + r * 64, 64,
                  cb_.data() + (ly + r) * 128 + lx);
      std::copy_n(snap.cr.data() + r * 64, 64,
                  cr_.data() + (ly + r) * 128 + lx);
    }
  }
  const int gx = (region & 1) * 16, gy = (region >> 1) * 16;
  for (int r = 0; r < 16; ++r)
    std::copy_n(snap.cells.data() + r * 16, 16,
                cell_written_.data() + (gy + r) * 32 + gx);
}

int ReferenceSampleMemory::occupancy() const {
  // Cells of empty regions are stale and do not count.
  int cells = 0;
  for (int cy = 0; cy < 32; ++cy)
    for (int cx = 0; cx < 32; ++cx) {
      if (!cell_written_[cy * 32 + cx]) continue;
      const Region& reg = regions_[(cy >> 4) * 2 + (cx >> 4)];
      if (reg.state != RegionState::kEmpty) ++cells;
    }
  return cells * 16;
}

}  // namespace scc
