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

#include "codec_internal.hpp"
#include "scc/deblock.hpp"

namespace scc {

namespace internal {
namespace {

// Quadtree walk mirroring the encoder: 128 always splits, nodes sticking
// out of the picture split without a flag, nodes fully outside vanish,
// fully-inside nodes of 8..64 read a split flag, size 4 is a leaf.
void decode_node(CodingCtx& ctx, BitReader& reader, int x, int y, int size) {
  if (x >= ctx.width() || y >= ctx.height()) return;
  const bool partial =
      x + size > ctx.width() || y + size > ctx.height();
  bool split;
  if (size == 128 || partial)
    split = true;
  else if (size == 4)
    split = false;
  else
    split = reader.get_bit() != 0;
  if (split) {
    const int h = size / 2;
    decode_node(ctx, reader, x, y, h);
    decode_node(ctx, reader, x + h, y, h);
    decode_node(ctx, reader, x, y + h, h);
    decode_node(ctx, reader, x + h, y + h, h);
    return;
  }
  ctx.rsm.prepare_region(x, y);
  const CuDecision d = parse_cu(ctx, reader, x, y, size);
  commit_cu(ctx, d, x, y, size);
}

}  // namespace
}  // namespace internal

DecodeResult decode_stream(const std::vector<uint8_t>& bytes) {
  using namespace internal;
  const ParsedContainer pc = parse_container(bytes);
  DecodeResult out;
  out.header = pc.header;
  for (const std::vector<uint8_t>& payload : pc.payloads) {
    CodingCtx ctx = make_coding_ctx(out.header);
    BitReader reader(payload);
    for (int cy = 0; cy < ctx.height(); cy += 128)
      for (int cx = 0; cx < ctx.width(); cx += 128) {
        if (cx == 0) {
          ctx.history.clear();
          ctx.predictor.clear();
        }
        ctx.rsm.begin_ctu(cx, cy);
        decode_node(ctx, reader, cx, cy, 128);
      }
    reader.byte_align_checked();
    if (reader.bits_left() != 0)
      throw BitstreamError("trailing data after frame payload");
    // Lossless output is exact by contract, so the filter never runs there.
    if ((out.header.tools & kToolDeblock) && !ctx.lossless())
      deblock_frame(&ctx.recon, ctx.map);
    out.stats.push_back(compute_stats(ctx, payload.size() * 8));
    out.traces.push_back(std::move(ctx.trace));
    out.frames.push_back(std::move(ctx.recon));
  }
  return out;
}

}  // namespace scc
