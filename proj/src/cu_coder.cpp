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

#include <algorithm>

#include "codec_internal.hpp"
#include "scc/quant.hpp"
#include "scc/transform.hpp"
#include "scc/ycocg.hpp"

namespace scc {
namespace internal {

namespace {

// Vectors beyond this never validate (pictures are at most 65535 wide) and
// adding them to coordinates must not overflow.
constexpr int kMaxVectorMagnitude = 1 << 20;

uint64_t splitmix64(uint64_t v) {
  v += 0x9e3779b97f4a7c15ull;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
  return v ^ (v >> 31);
}

}  // namespace

std::vector<CuMode> build_mode_list(uint16_t tools) {
  std::vector<CuMode> list = {CuMode::kIntraDc, CuMode::kIntraPlanar,
                              CuMode::kIntraHor, CuMode::kIntraVer};
  if (tools & kToolIbc) list.push_back(CuMode::kIbc);
  if (tools & kToolPalette) list.push_back(CuMode::kPalette);
  if (tools & kToolStringCopy) list.push_back(CuMode::kStringCopy);
  return list;
}

uint32_t tuple_key(const uint8_t* four) {
  const uint64_t v = static_cast<uint64_t>(four[0]) |
                     (static_cast<uint64_t>(four[1]) << 8) |
                     (static_cast<uint64_t>(four[2]) << 16) |
                     (static_cast<uint64_t>(four[3]) << 24);
  return static_cast<uint32_t>(splitmix64(v));
}

TupleIndex build_tuple_index(const PlaneBuffer& plane) {
  TupleIndex index;
  for (int y = 0; y < plane.height(); ++y) {
    const uint8_t* row = plane.row(y);
    for (int x = 0; x + 4 <= plane.width(); ++x)
      index[tuple_key(row + x)].push_back(y * plane.width() + x);
  }
  return index;
}

CodingCtx make_coding_ctx(const StreamHeader& hdr) {
  CodingCtx ctx;
  ctx.hdr = &hdr;
  ctx.mode_list = build_mode_list(hdr.tools);
  ctx.recon = make_frame(hdr.width, hdr.height, hdr.chroma(), hdr.color());
  ctx.coded.assign(static_cast<size_t>((hdr.width + 3) / 4) *
                       ((hdr.height + 3) / 4),
                   0);
  ctx.map = CuMap(hdr.width, hdr.height);
  ctx.rsm = ReferenceSampleMemory(hdr.chroma(), hdr.width, hdr.height);
  return ctx;
}

std::vector<ResBlock> residual_layout(const CodingCtx& ctx, int size) {
  std::vector<ResBlock> out;
  for (int p = 0; p < ctx.plane_count(); ++p) {
    const int pn = size >> plane_shift(ctx, p);
    if (pn > 32) {
      const int t = pn / 2;
      for (int qy = 0; qy < 2; ++qy)
        for (int qx = 0; qx < 2; ++qx)
          out.push_back(ResBlock{p, qx * t, qy * t, t, false, {}});
    } else {
      out.push_back(ResBlock{p, 0, 0, pn, false, {}});
    }
  }
  return out;
}

void decode_residual_tile(ResidualMode rmode, const QuantParams& qp,
                          const std::vector<int32_t>& levels, int n,
                          int32_t* resid) {
  const int count = n * n;
  if (levels.empty()) {
    std::fill_n(resid, count, 0);
    return;
  }
  std::vector<int32_t> work = levels;
  if (rmode == ResidualMode::kTsBdpcmH || rmode == ResidualMode::kTsBdpcmV)
    bdpcm_inverse(work.data(), n, n,
                  rmode == ResidualMode::kTsBdpcmH);
  if (rmode == ResidualMode::kTransform && !qp.lossless) {
    std::vector<int32_t> coeff(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) coeff[static_cast<size_t>(i)] = dequantize(work[static_cast<size_t>(i)], qp, 6);
    dct_inverse(coeff.data(), n, resid);
  } else if (qp.lossless) {
    std::copy_n(work.data(), count, resid);
  } else {
    for (int i = 0; i < count; ++i)
      resid[i] = dequantize(work[static_cast<size_t>(i)], qp, 0);
  }
}

CuDecision parse_cu(const CodingCtx& ctx, BitReader& reader, int x, int y,
                    int size) {
  CuDecision d;
  const uint32_t mode_idx = reader.get_ue();
  if (mode_idx >= ctx.mode_list.size())
    throw BitstreamError("coding mode index out of range");
  d.mode = ctx.mode_list[mode_idx];
  if (signals_act(ctx, d.mode)) d.act = reader.get_bit() != 0;

  if (d.mode == CuMode::kIbc) {
    d.bv_predicted = reader.get_bit() != 0;
    if (d.bv_predicted) {
      d.bv_class = static_cast<int>(reader.get_bits(3));
      if (d.bv_class > 6)
        throw BitstreamError("block vector class out of range");
      const auto cands = classify_history(ctx.history, x, y);
      if (!cands[static_cast<size_t>(d.bv_class)])
        throw BitstreamError("block vector class has no candidate");
      d.bv = *cands[static_cast<size_t>(d.bv_class)];
    } else {
      d.bv.x = reader.get_se();
      d.bv.y = reader.get_se();
      if (std::abs(d.bv.x) > kMaxVectorMagnitude ||
          std::abs(d.bv.y) > kMaxVectorMagnitude)
        throw BitstreamError("block vector out of range");
    }
  } else if (d.mode == CuMode::kPalette) {
    const int comps = ctx.chroma() == ChromaFormat::k444 ? 3 : 1;
    const auto& pred = ctx.predictor.entries();
    const uint32_t num_reused = reader.get_ue();
    if (num_reused > 31 || num_reused > pred.size())
      throw BitstreamError("palette reuse count out of range");
    int prev = -1;
    for (uint32_t i = 0; i < num_reused; ++i) {
      const uint32_t gap = reader.get_ue();
      const int64_t idx = static_cast<int64_t>(prev) + 1 + gap;
      if (idx >= static_cast<int64_t>(pred.size()))
        throw BitstreamError("palette reuse index out of range");
      d.reuse_indices.push_back(static_cast<int>(idx));
      d.palette.push_back(pred[static_cast<size_t>(idx)]);
      prev = static_cast<int>(idx);
    }
    const uint32_t num_new = reader.get_ue();
    if (num_reused + num_new > 31)
      throw BitstreamError("palette larger than 31 entries");
    for (uint32_t i = 0; i < num_new; ++i) {
      PaletteEntry e{};
      for (int c = 0; c < comps; ++c)
        e[static_cast<size_t>(c)] =
            static_cast<uint8_t>(reader.get_bits(8));
      d.new_entries.push_back(e);
      d.palette.push_back(e);
    }
    const int palette_size = static_cast<int>(d.palette.size());
    d.indices.assign(static_cast<size_t>(size) * size, 0);
    read_index_map(reader, d.indices.data(), size, size, palette_size);
    int escapes = 0;
    for (uint8_t v : d.indices)
      if (v == palette_size) ++escapes;
    for (int i = 0; i < escapes; ++i) {
      std::array<int32_t, 3> esc{};
      for (int c = 0; c < comps; ++c) {
        if (ctx.lossless()) {
          esc[static_cast<size_t>(c)] =
              static_cast<int32_t>(reader.get_bits(8));
        } else {
          const uint32_t lvl = reader.get_ue();
          if (lvl > static_cast<uint32_t>(kMaxLevelMagnitude))
            throw BitstreamError("escape level out of range");
          esc[static_cast<size_t>(c)] = static_cast<int32_t>(lvl);
        }
      }
      d.escapes.push_back(esc);
    }
    if (ctx.chroma() == ChromaFormat::k420) {
      const int cn = size / 2;
      for (int p = 0; p < 2; ++p) {
        d.plt_chroma_cbf[static_cast<size_t>(p)] = reader.get_bit() != 0;
        if (d.plt_chroma_cbf[static_cast<size_t>(p)]) {
          d.plt_chroma_levels[static_cast<size_t>(p)].assign(
              static_cast<size_t>(cn) * cn, 0);
          read_levels(reader, d.plt_chroma_levels[static_cast<size_t>(p)].data(),
                      cn, cn);
        }
      }
    }
    return d;
  } else if (d.mode == CuMode::kStringCopy) {
    const int total = size * size;
    int pos = 0;
    HistoryVectorTable clone = ctx.history;
    while (pos < total) {
      IscRun run;
      run.predicted = reader.get_bit() != 0;
      if (run.predicted) {
        run.pred_index = reader.get_ue();
        if (run.pred_index >= clone.entries().size())
          throw BitstreamError("string vector index out of range");
        run.sv = clone.entries()[run.pred_index].bv;
      } else {
        run.sv.x = reader.get_se();
        run.sv.y = reader.get_se();
        if (std::abs(run.sv.x) > kMaxVectorMagnitude ||
            std::abs(run.sv.y) > kMaxVectorMagnitude)
          throw BitstreamError("string vector out of range");
      }
      const int64_t len = (static_cast<int64_t>(reader.get_ue()) + 1) * 4;
      if (pos + len > total)
        throw BitstreamError("string run exceeds coding unit");
      run.length = static_cast<int>(len);
      clone.update(run.sv, x + pos % size, y + pos / size, run.length);
      d.runs.push_back(run);
      pos += run.length;
    }
    return d;
  }

  const bool tsm = (ctx.hdr->tools & kToolTransformSkip) != 0;
  const bool bdpcm_tool = (ctx.hdr->tools & kToolBdpcm) != 0;
  bool ts = ctx.lossless();
  if (!ctx.lossless()) ts = tsm && reader.get_bit() != 0;
  if (ts && bdpcm_tool && reader.get_bit() != 0)
    d.rmode = reader.get_bit() != 0 ? ResidualMode::kTsBdpcmV
                                    : ResidualMode::kTsBdpcmH;
  else
    d.rmode = ts ? ResidualMode::kTs : ResidualMode::kTransform;

  d.blocks = residual_layout(ctx, size);
  for (ResBlock& b : d.blocks) {
    b.cbf = reader.get_bit() != 0;
    if (b.cbf) {
      b.levels.assign(static_cast<size_t>(b.n) * b.n, 0);
      read_levels(reader, b.levels.data(), b.n, b.n);
    }
  }
  return d;
}

std::array<std::vector<int32_t>, 3> build_prediction(const CodingCtx& ctx,
                                                     CuMode mode,
                                                     BlockVector bv, int x,
                                                     int y, int size) {
  const int planes = ctx.plane_count();
  std::array<std::vector<int32_t>, 3> pred;
  for (int p = 0; p < planes; ++p) {
    const int shift = plane_shift(ctx, p);
    const int pn = size >> shift;
    const int px = x >> shift;
    const int py = y >> shift;
    pred[static_cast<size_t>(p)].resize(static_cast<size_t>(pn) * pn);
    if (is_intra_mode(mode)) {
      predict_intra(ctx, p, mode, px, py, pn,
                    pred[static_cast<size_t>(p)].data());
    } else {
      if (p == 0 && !ctx.rsm.valid_rect(x + bv.x, y + bv.y, size, size))
        throw BitstreamError("block copy source not in valid sample memory");
      if (p == 1 && ctx.chroma() == ChromaFormat::k420 &&
          !ctx.rsm.valid_chroma_rect(px + bv.x / 2, py + bv.y / 2, pn, pn))
        throw BitstreamError("chroma block copy source invalid");
      for (int v = 0; v < pn; ++v)
        for (int u = 0; u < pn; ++u) {
          int s;
          if (p == 0) {
            s = ctx.rsm.luma_at(x + bv.x + u, y + bv.y + v);
          } else if (ctx.chroma() == ChromaFormat::k420) {
            s = ctx.rsm.chroma_at(p, px + bv.x / 2 + u, py + bv.y / 2 + v);
          } else {
            s = ctx.rsm.chroma_at(p, px + bv.x + u, py + bv.y + v);
          }
          pred[static_cast<size_t>(p)][static_cast<size_t>(v) * pn + u] = s;
        }
    }
  }
  return pred;
}

CuSamples reconstruct_cu_samples(const CodingCtx& ctx, const CuDecision& d,
                                 int x, int y, int size) {
  CuSamples out;
  const QuantParams qp{ctx.hdr->qp, ctx.lossless()};
  const int planes = ctx.plane_count();

  if (d.mode == CuMode::kPalette) {
    const int comps = ctx.chroma() == ChromaFormat::k444 ? 3 : 1;
    const int palette_size = static_cast<int>(d.palette.size());
    for (int c = 0; c < comps; ++c)
      out.plane[static_cast<size_t>(c)].assign(
          static_cast<size_t>(size) * size, 0);
    size_t esc_used = 0;
    for (int i = 0; i < size * size; ++i) {
      auto [sx, sy] = traverse_pos(i, size);
      const uint8_t idx = d.indices[static_cast<size_t>(sy) * size + sx];
      if (idx < palette_size) {
        for (int c = 0; c < comps; ++c)
          out.plane[static_cast<size_t>(c)][static_cast<size_t>(sy) * size +
                                            sx] =
              d.palette[idx][static_cast<size_t>(c)];
      } else {
        if (esc_used >= d.escapes.size())
          throw BitstreamError("missing palette escape value");
        const auto& esc = d.escapes[esc_used++];
        for (int c = 0; c < comps; ++c) {
          const int32_t v = esc[static_cast<size_t>(c)];
          out.plane[static_cast<size_t>(c)][static_cast<size_t>(sy) * size +
                                            sx] =
              ctx.lossless() ? static_cast<uint8_t>(v)
                             : clip_u8(dequantize(v, qp, 0));
        }
      }
    }
    if (ctx.chroma() == ChromaFormat::k420) {
      const int cn = size / 2;
      for (int p = 1; p <= 2; ++p) {
        std::vector<int32_t> pred(static_cast<size_t>(cn) * cn);
        predict_intra(ctx, p, CuMode::kIntraDc, x / 2, y / 2, cn, pred.data());
        std::vector<int32_t> resid(static_cast<size_t>(cn) * cn, 0);
        if (d.plt_chroma_cbf[static_cast<size_t>(p - 1)])
          decode_residual_tile(ResidualMode::kTs, qp,
                               d.plt_chroma_levels[static_cast<size_t>(p - 1)],
                               cn, resid.data());
        auto& plane = out.plane[static_cast<size_t>(p)];
        plane.resize(static_cast<size_t>(cn) * cn);
        for (int i = 0; i < cn * cn; ++i)
          plane[static_cast<size_t>(i)] = clip_u8(
              pred[static_cast<size_t>(i)] + resid[static_cast<size_t>(i)]);
      }
    }
    return out;
  }

  if (d.mode == CuMode::kStringCopy) {
    const int total = size * size;
    std::vector<BlockVector> svmap(static_cast<size_t>(total));
    auto& luma = out.plane[0];
    luma.resize(static_cast<size_t>(total));
    int pos = 0;
    for (const IscRun& run : d.runs) {
      for (int k = 0; k < run.length; ++k) {
        const int i = pos + k;
        const int gx = x + i % size;
        const int gy = y + i / size;
        luma[static_cast<size_t>(i)] =
            ctx.rsm.luma_at(gx + run.sv.x, gy + run.sv.y);
        svmap[static_cast<size_t>(i)] = run.sv;
      }
      pos += run.length;
    }
    if (pos != total) throw BitstreamError("string runs do not cover unit");
    if (ctx.chroma() == ChromaFormat::k420) {
      const int cn = size / 2;
      for (int p = 1; p <= 2; ++p) {
        auto& plane = out.plane[static_cast<size_t>(p)];
        plane.resize(static_cast<size_t>(cn) * cn);
        for (int cy = 0; cy < cn; ++cy)
          for (int cx = 0; cx < cn; ++cx) {
            // Chroma rides with the string covering the cluster's top-left
            // luma sample; the vector is halved with truncation.
            const BlockVector sv =
                svmap[static_cast<size_t>(2 * cy) * size + 2 * cx];
            plane[static_cast<size_t>(cy) * cn + cx] = ctx.rsm.chroma_at(
                p, x / 2 + cx + sv.x / 2, y / 2 + cy + sv.y / 2);
          }
      }
    } else if (ctx.chroma() == ChromaFormat::k444) {
      for (int p = 1; p <= 2; ++p) {
        auto& plane = out.plane[static_cast<size_t>(p)];
        plane.resize(static_cast<size_t>(total));
        for (int i = 0; i < total; ++i) {
          const int gx = x + i % size;
          const int gy = y + i / size;
          const BlockVector sv = svmap[static_cast<size_t>(i)];
          plane[static_cast<size_t>(i)] =
              ctx.rsm.chroma_at(p, gx + sv.x, gy + sv.y);
        }
      }
    }
    return out;
  }

  // Intra prediction or block copy, then the coded residual.
  std::array<std::vector<int32_t>, 3> pred =
      build_prediction(ctx, d.mode, d.bv, x, y, size);

  std::array<std::vector<int32_t>, 3> resid;
  for (int p = 0; p < planes; ++p) {
    const int pn = size >> plane_shift(ctx, p);
    resid[static_cast<size_t>(p)].assign(static_cast<size_t>(pn) * pn, 0);
  }
  for (const ResBlock& b : d.blocks) {
    const int pn = size >> plane_shift(ctx, b.plane);
    std::vector<int32_t> tile(static_cast<size_t>(b.n) * b.n, 0);
    decode_residual_tile(d.rmode, qp, b.cbf ? b.levels : std::vector<int32_t>{},
                         b.n, tile.data());
    for (int ty = 0; ty < b.n; ++ty)
      for (int tx = 0; tx < b.n; ++tx)
        resid[static_cast<size_t>(b.plane)]
             [static_cast<size_t>(b.oy + ty) * pn + b.ox + tx] =
                 tile[static_cast<size_t>(ty) * b.n + tx];
  }

  if (d.act) {
    // Residual was coded in the transformed domain: transform the
    // prediction forward, add, transform back, clip.
    const int count = size * size;
    for (int p = 0; p < 3; ++p)
      out.plane[static_cast<size_t>(p)].resize(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      const ColorTriple pt = act_forward(
          ctx.lossless(), pred[0][static_cast<size_t>(i)],
          pred[1][static_cast<size_t>(i)], pred[2][static_cast<size_t>(i)]);
      const ColorTriple rt{pt.y + resid[0][static_cast<size_t>(i)],
                           pt.co + resid[1][static_cast<size_t>(i)],
                           pt.cg + resid[2][static_cast<size_t>(i)]};
      int r, g, b;
      if (ctx.lossless())
        ycocg_lossless_inverse(rt, &r, &g, &b);
      else
        ycocg_lossy_inverse(rt, &r, &g, &b);
      out.plane[0][static_cast<size_t>(i)] = clip_u8(r);
      out.plane[1][static_cast<size_t>(i)] = clip_u8(g);
      out.plane[2][static_cast<size_t>(i)] = clip_u8(b);
    }
    return out;
  }

  for (int p = 0; p < planes; ++p) {
    const int pn = size >> plane_shift(ctx, p);
    auto& plane = out.plane[static_cast<size_t>(p)];
    plane.resize(static_cast<size_t>(pn) * pn);
    for (int i = 0; i < pn * pn; ++i)
      plane[static_cast<size_t>(i)] =
          clip_u8(pred[static_cast<size_t>(p)][static_cast<size_t>(i)] +
                  resid[static_cast<size_t>(p)][static_cast<size_t>(i)]);
  }
  return out;
}

void commit_cu(CodingCtx& ctx, const CuDecision& d, int x, int y, int size) {
  const CuSamples s = reconstruct_cu_samples(ctx, d, x, y, size);
  for (int p = 0; p < ctx.plane_count(); ++p) {
    const int shift = plane_shift(ctx, p);
    const int pn = size >> shift;
    PlaneBuffer& dst = ctx.recon.planes[static_cast<size_t>(p)];
    for (int row = 0; row < pn; ++row)
      std::copy_n(s.plane[static_cast<size_t>(p)].data() +
                      static_cast<size_t>(row) * pn,
                  pn, dst.row((y >> shift) + row) + (x >> shift));
  }
  ctx.rsm.write_block(ctx.recon, x, y, size, size);
  ctx.mark_coded(x, y, size, size);
  ctx.map.fill(x, y, size, size, ctx.next_cu_id++, d.mode);
  if (d.mode == CuMode::kIbc) {
    ctx.history.update(d.bv, x, y, size * size);
  } else if (d.mode == CuMode::kStringCopy) {
    int pos = 0;
    for (const IscRun& run : d.runs) {
      ctx.history.update(run.sv, x + pos % size, y + pos / size, run.length);
      pos += run.length;
    }
  } else if (d.mode == CuMode::kPalette) {
    ctx.predictor.apply(d.palette);
  }
  ctx.trace.history.push_back(ctx.history.checksum());
  ctx.trace.predictor.push_back(ctx.predictor.checksum());
}

FrameStats compute_stats(const CodingCtx& ctx, uint64_t payload_bits) {
  FrameStats st;
  st.payload_bits = payload_bits;
  uint64_t intra = 0, ibc = 0, plt = 0, isc = 0;
  for (CuMode m : ctx.map.mode) {
    if (is_intra_mode(m)) ++intra;
    else if (m == CuMode::kIbc) ++ibc;
    else if (m == CuMode::kPalette) ++plt;
    else ++isc;
  }
  const double total = static_cast<double>(ctx.map.mode.size());
  st.area_intra = 100.0 * static_cast<double>(intra) / total;
  st.area_ibc = 100.0 * static_cast<double>(ibc) / total;
  st.area_palette = 100.0 * static_cast<double>(plt) / total;
  st.area_string = 100.0 * static_cast<double>(isc) / total;
  return st;
}

}  // namespace internal
}  // namespace scc
