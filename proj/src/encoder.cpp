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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "codec_internal.hpp"
#include "scc/deblock.hpp"
#include "scc/transform.hpp"

namespace scc {
namespace internal {
namespace {

// Rate-distortion trade-off. Lossless streams have zero distortion on every
// candidate, so the multiplier only has to be positive there and the search
// degenerates to pure rate minimization.
double rd_lambda(const StreamHeader& hdr) {
  if (hdr.lossless()) return 1.0;
  return 0.57 * std::exp2((hdr.qp - 12) / 3.0);
}

// ---------------------------------------------------------------------------
// Rollback

// Everything commit_cu can touch inside one quadtree node, captured before a
// trial so a rejected branch leaves no residue. Nodes of 64 or less are
// size-aligned and therefore live inside a single sample-memory region.
struct Snapshot {
  ReferenceSampleMemory::RegionSnapshot rsm;
  std::array<std::vector<uint8_t>, 3> recon;
  std::vector<uint8_t> coded;
  std::vector<uint32_t> cu_id;
  std::vector<CuMode> cu_mode;
  HistoryVectorTable history;
  PalettePredictor predictor;
  uint32_t next_cu_id = 0;
};

Snapshot take_snapshot(const CodingCtx& ctx, int x, int y, int size) {
  Snapshot s;
  s.rsm = ctx.rsm.snapshot_region(ReferenceSampleMemory::region_of(x, y));
  for (int p = 0; p < ctx.plane_count(); ++p) {
    const int shift = plane_shift(ctx, p);
    const int pn = size >> shift;
    auto& dst = s.recon[static_cast<size_t>(p)];
    dst.resize(static_cast<size_t>(pn) * pn);
    const PlaneBuffer& pb = ctx.recon.planes[static_cast<size_t>(p)];
    for (int row = 0; row < pn; ++row)
      std::copy_n(pb.row((y >> shift) + row) + (x >> shift), pn,
                  dst.data() + static_cast<size_t>(row) * pn);
  }
  const int c4 = size / 4;
  s.coded.resize(static_cast<size_t>(c4) * c4);
  s.cu_id.resize(static_cast<size_t>(c4) * c4);
  s.cu_mode.resize(static_cast<size_t>(c4) * c4);
  for (int cy = 0; cy < c4; ++cy)
    for (int cx = 0; cx < c4; ++cx) {
      const size_t src =
          static_cast<size_t>(y / 4 + cy) * ctx.map.w4 + (x / 4 + cx);
      const size_t dst = static_cast<size_t>(cy) * c4 + cx;
      s.coded[dst] = ctx.coded[src];
      s.cu_id[dst] = ctx.map.cu_id[src];
      s.cu_mode[dst] = ctx.map.mode[src];
    }
  s.history = ctx.history;
  s.predictor = ctx.predictor;
  s.next_cu_id = ctx.next_cu_id;
  return s;
}

void restore_snapshot(CodingCtx& ctx, const Snapshot& s, int x, int y,
                      int size) {
  ctx.rsm.restore_region(s.rsm);
  for (int p = 0; p < ctx.plane_count(); ++p) {
    const int shift = plane_shift(ctx, p);
    const int pn = size >> shift;
    const auto& src = s.recon[static_cast<size_t>(p)];
    PlaneBuffer& pb = ctx.recon.planes[static_cast<size_t>(p)];
    for (int row = 0; row < pn; ++row)
      std::copy_n(src.data() + static_cast<size_t>(row) * pn, pn,
                  pb.row((y >> shift) + row) + (x >> shift));
  }
  const int c4 = size / 4;
  for (int cy = 0; cy < c4; ++cy)
    for (int cx = 0; cx < c4; ++cx) {
      const size_t dst =
          static_cast<size_t>(y / 4 + cy) * ctx.map.w4 + (x / 4 + cx);
      const size_t src = static_cast<size_t>(cy) * c4 + cx;
      ctx.coded[dst] = s.coded[src];
      ctx.map.cu_id[dst] = s.cu_id[src];
      ctx.map.mode[dst] = s.cu_mode[src];
    }
  ctx.history = s.history;
  ctx.predictor = s.predictor;
  ctx.next_cu_id = s.next_cu_id;
}

// ---------------------------------------------------------------------------
// Candidate evaluation

struct CandEval {
  CuDecision d;
  double dist = 0.0;
  uint64_t bits = 0;
  double cost = 0.0;
};

uint64_t sse_against_original(const CodingCtx& ctx, const CuSamples& s, int x,
                              int y, int size) {
  uint64_t acc = 0;
  for (int p = 0; p < ctx.plane_count(); ++p) {
    const int shift = plane_shift(ctx, p);
    const int pn = size >> shift;
    const PlaneBuffer& op = ctx.orig->planes[static_cast<size_t>(p)];
    const uint8_t* rp = s.plane[static_cast<size_t>(p)].data();
    for (int row = 0; row < pn; ++row) {
      const uint8_t* o = op.row((y >> shift) + row) + (x >> shift);
      const uint8_t* r = rp + static_cast<size_t>(row) * pn;
      for (int i = 0; i < pn; ++i) {
        const int dv = static_cast<int>(o[i]) - static_cast<int>(r[i]);
        acc += static_cast<uint64_t>(dv * dv);
      }
    }
  }
  return acc;
}

CandEval evaluate(const CodingCtx& ctx, CuDecision d, int x, int y, int size,
                  double lambda) {
  CandEval e;
  const CuSamples s = reconstruct_cu_samples(ctx, d, x, y, size);
  e.dist = static_cast<double>(sse_against_original(ctx, s, x, y, size));
  BitCounter bc;
  write_cu(bc, ctx, d, size);
  e.bits = bc.bit_count();
  e.cost = e.dist + lambda * static_cast<double>(e.bits);
  e.d = std::move(d);
  return e;
}

// Keeps the earliest candidate on exact cost and bit ties, so the search
// order itself is part of the deterministic output contract.
void consider(std::optional<CandEval>& best, CandEval cand) {
  if (!best || cand.cost < best->cost ||
      (cand.cost == best->cost && cand.bits < best->bits))
    best = std::move(cand);
}

// ---------------------------------------------------------------------------
// Residual construction

std::vector<ResidualMode> residual_mode_choices(const CodingCtx& ctx) {
  const bool tsm = (ctx.hdr->tools & kToolTransformSkip) != 0;
  const bool bdpcm = (ctx.hdr->tools & kToolBdpcm) != 0;
  std::vector<ResidualMode> out;
  if (ctx.lossless()) {
    out.push_back(ResidualMode::kTs);
    if (bdpcm) {
      out.push_back(ResidualMode::kTsBdpcmH);
      out.push_back(ResidualMode::kTsBdpcmV);
    }
    return out;
  }
  out.push_back(ResidualMode::kTransform);
  if (tsm) {
    out.push_back(ResidualMode::kTs);
    if (bdpcm) {
      out.push_back(ResidualMode::kTsBdpcmH);
      out.push_back(ResidualMode::kTsBdpcmV);
    }
  }
  return out;
}

// Levels for one tile, mirroring decode_residual_tile step for step in the
// opposite direction.
std::vector<int32_t> encode_residual_tile(ResidualMode rmode,
                                          const QuantParams& qp,
                                          const int32_t* resid, int n) {
  const int count = n * n;
  std::vector<int32_t> levels(static_cast<size_t>(count));
  if (rmode == ResidualMode::kTransform && !qp.lossless) {
    std::vector<int32_t> coeff(static_cast<size_t>(count));
    dct_forward(resid, n, coeff.data());
    // Coefficients carry a 64x scale; folding it into the quantizer step
    // keeps levels in the same range as transform-skip levels.
    for (int i = 0; i < count; ++i)
      levels[static_cast<size_t>(i)] =
          quantize(coeff[static_cast<size_t>(i)], qp, 6);
    return levels;
  }
  if (qp.lossless)
    std::copy_n(resid, count, levels.data());
  else
    for (int i = 0; i < count; ++i)
      levels[static_cast<size_t>(i)] =
          quantize(resid[static_cast<size_t>(i)], qp, 0);
  if (rmode == ResidualMode::kTsBdpcmH || rmode == ResidualMode::kTsBdpcmV)
    bdpcm_forward(levels.data(), n, n, rmode == ResidualMode::kTsBdpcmH);
  return levels;
}

std::vector<ResBlock> build_residual_blocks(
    const CodingCtx& ctx, const std::array<std::vector<int32_t>, 3>& resid,
    ResidualMode rmode, int size) {
  const QuantParams qp{ctx.hdr->qp, ctx.lossless()};
  std::vector<ResBlock> blocks = residual_layout(ctx, size);
  std::vector<int32_t> tile;
  for (ResBlock& b : blocks) {
    const int pn = size >> plane_shift(ctx, b.plane);
    tile.resize(static_cast<size_t>(b.n) * b.n);
    for (int ty = 0; ty < b.n; ++ty)
      for (int tx = 0; tx < b.n; ++tx)
        tile[static_cast<size_t>(ty) * b.n + tx] =
            resid[static_cast<size_t>(b.plane)]
                 [static_cast<size_t>(b.oy + ty) * pn + b.ox + tx];
    std::vector<int32_t> levels =
        encode_residual_tile(rmode, qp, tile.data(), b.n);
    b.cbf = std::any_of(levels.begin(), levels.end(),
                        [](int32_t v) { return v != 0; });
    if (b.cbf) b.levels = std::move(levels);
  }
  return blocks;
}

// Residual of an intra or block-copy candidate, in the domain the stream
// codes it in (color-rotated when the act flag is set).
std::array<std::vector<int32_t>, 3> candidate_residual(
    const CodingCtx& ctx, const std::array<std::vector<int32_t>, 3>& pred,
    bool act, int x, int y, int size) {
  std::array<std::vector<int32_t>, 3> resid;
  if (act) {
    const int count = size * size;
    for (int p = 0; p < 3; ++p)
      resid[static_cast<size_t>(p)].resize(static_cast<size_t>(count));
    for (int row = 0; row < size; ++row) {
      const uint8_t* o0 = ctx.orig->planes[0].row(y + row) + x;
      const uint8_t* o1 = ctx.orig->planes[1].row(y + row) + x;
      const uint8_t* o2 = ctx.orig->planes[2].row(y + row) + x;
      for (int i = 0; i < size; ++i) {
        const size_t idx = static_cast<size_t>(row) * size + i;
        const ColorTriple ot =
            act_forward(ctx.lossless(), o0[i], o1[i], o2[i]);
        const ColorTriple pt = act_forward(
            ctx.lossless(), static_cast<int>(pred[0][idx]),
            static_cast<int>(pred[1][idx]), static_cast<int>(pred[2][idx]));
        resid[0][idx] = ot.y - pt.y;
        resid[1][idx] = ot.co - pt.co;
        resid[2][idx] = ot.cg - pt.cg;
      }
    }
    return resid;
  }
  for (int p = 0; p < ctx.plane_count(); ++p) {
    const int shift = plane_shift(ctx, p);
    const int pn = size >> shift;
    auto& rp = resid[static_cast<size_t>(p)];
    rp.resize(static_cast<size_t>(pn) * pn);
    const PlaneBuffer& op = ctx.orig->planes[static_cast<size_t>(p)];
    for (int row = 0; row < pn; ++row) {
      const uint8_t* o = op.row((y >> shift) + row) + (x >> shift);
      for (int i = 0; i < pn; ++i)
        rp[static_cast<size_t>(row) * pn + i] =
            static_cast<int32_t>(o[i]) -
            pred[static_cast<size_t>(p)][static_cast<size_t>(row) * pn + i];
    }
  }
  return resid;
}

void try_predictive_mode(const CodingCtx& ctx, CuMode mode, bool predicted,
                         int bv_class, BlockVector bv, int x, int y, int size,
                         double lambda, std::optional<CandEval>& best) {
  const std::array<std::vector<int32_t>, 3> pred =
      build_prediction(ctx, mode, bv, x, y, size);
  const bool act_choices[2] = {false, true};
  for (bool act : act_choices) {
    if (act && !signals_act(ctx, mode)) continue;
    const std::array<std::vector<int32_t>, 3> resid =
        candidate_residual(ctx, pred, act, x, y, size);
    for (ResidualMode rmode : residual_mode_choices(ctx)) {
      CuDecision d;
      d.mode = mode;
      d.act = act;
      d.bv_predicted = predicted;
      d.bv_class = bv_class;
      d.bv = bv;
      d.rmode = rmode;
      d.blocks = build_residual_blocks(ctx, resid, rmode, size);
      consider(best, evaluate(ctx, std::move(d), x, y, size, lambda));
    }
  }
}

// ---------------------------------------------------------------------------
// Block-copy search

bool block_vector_valid(const CodingCtx& ctx, BlockVector bv, int x, int y,
                        int size) {
  if (!ctx.rsm.valid_rect(x + bv.x, y + bv.y, size, size)) return false;
  if (ctx.chroma() == ChromaFormat::k420 &&
      !ctx.rsm.valid_chroma_rect(x / 2 + bv.x / 2, y / 2 + bv.y / 2, size / 2,
                                 size / 2))
    return false;
  return true;
}

uint64_t luma_sad(const CodingCtx& ctx, BlockVector bv, int x, int y,
                  int size) {
  const PlaneBuffer& op = ctx.orig->planes[0];
  const PlaneBuffer& rp = ctx.recon.planes[0];
  uint64_t acc = 0;
  for (int row = 0; row < size; ++row) {
    const uint8_t* o = op.row(y + row) + x;
    const uint8_t* r = rp.row(y + bv.y + row) + (x + bv.x);
    for (int i = 0; i < size; ++i)
      acc += static_cast<uint64_t>(
          std::abs(static_cast<int>(o[i]) - static_cast<int>(r[i])));
  }
  return acc;
}

void try_block_copy(const CodingCtx& ctx, int x, int y, int size,
                    double lambda, std::optional<CandEval>& best) {
  const auto classes = classify_history(ctx.history, x, y);
  std::vector<BlockVector> cands;
  auto add = [&](BlockVector bv) {
    if (bv.x == 0 && bv.y == 0) return;
    for (const BlockVector& c : cands)
      if (c == bv) return;
    if (block_vector_valid(ctx, bv, x, y, size)) cands.push_back(bv);
  };
  for (const auto& c : classes)
    if (c) add(*c);
  add({-size, 0});
  add({0, -size});
  add({-128, 0});
  add({-64, 0});
  add({0, -64});
  const BlockHashTable* table = size == 8    ? ctx.hash8
                                : size == 16 ? ctx.hash16
                                             : nullptr;
  if (table) {
    for (const BlockHashTable::Pos& m :
         table->find_matches(ctx.orig->planes[0], x, y, 24))
      add({m.x - x, m.y - y});
  }
  if (cands.empty()) return;

  std::vector<std::pair<uint64_t, BlockVector>> ranked;
  ranked.reserve(cands.size());
  for (const BlockVector& bv : cands)
    ranked.emplace_back(luma_sad(ctx, bv, x, y, size), bv);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.first < b.first;
                   });
  const size_t tries = std::min<size_t>(2, ranked.size());
  for (size_t i = 0; i < tries; ++i) {
    const BlockVector bv = ranked[i].second;
    bool predicted = false;
    int bv_class = 0;
    for (size_t c = 0; c < classes.size(); ++c)
      if (classes[c] && *classes[c] == bv) {
        predicted = true;
        bv_class = static_cast<int>(c);
        break;
      }
    try_predictive_mode(ctx, CuMode::kIbc, predicted, bv_class, bv, x, y,
                        size, lambda, best);
  }
}

// ---------------------------------------------------------------------------
// String-copy search

// Longest run of samples starting at string position `pos` that the vector
// reproduces exactly, luma and chroma both, reading only valid memory.
int string_match_length(const CodingCtx& ctx, BlockVector sv, int x, int y,
                        int size, int pos) {
  const int total = size * size;
  const PlaneBuffer& oy = ctx.orig->planes[0];
  const PlaneBuffer& ry = ctx.recon.planes[0];
  int len = 0;
  for (int k = pos; k < total; ++k) {
    const int gx = x + k % size;
    const int gy = y + k / size;
    const int sx = gx + sv.x;
    const int sy = gy + sv.y;
    if (!ctx.rsm.valid_rect(sx, sy, 1, 1)) break;
    if (ry.at(sx, sy) != oy.at(gx, gy)) break;
    if (ctx.chroma() == ChromaFormat::k420) {
      if ((gx & 1) == 0 && (gy & 1) == 0) {
        const int cx = gx / 2 + sv.x / 2;
        const int cy = gy / 2 + sv.y / 2;
        if (!ctx.rsm.valid_chroma_rect(cx, cy, 1, 1)) break;
        if (ctx.recon.planes[1].at(cx, cy) !=
                ctx.orig->planes[1].at(gx / 2, gy / 2) ||
            ctx.recon.planes[2].at(cx, cy) !=
                ctx.orig->planes[2].at(gx / 2, gy / 2))
          break;
      }
    } else if (ctx.chroma() == ChromaFormat::k444) {
      if (ctx.recon.planes[1].at(sx, sy) != ctx.orig->planes[1].at(gx, gy) ||
          ctx.recon.planes[2].at(sx, sy) != ctx.orig->planes[2].at(gx, gy))
        break;
    }
    ++len;
  }
  return len;
}

std::optional<std::vector<IscRun>> string_copy_search(const CodingCtx& ctx,
                                                      int x, int y,
                                                      int size) {
  const int total = size * size;
  HistoryVectorTable clone = ctx.history;
  std::optional<BlockVector> prev_sv;
  std::vector<IscRun> runs;
  int pos = 0;
  std::vector<BlockVector> cands;
  while (pos < total) {
    const int gx = x + pos % size;
    const int gy = y + pos / size;
    cands.clear();
    auto add = [&](BlockVector sv) {
      if (sv.x == 0 && sv.y == 0) return;
      for (const BlockVector& c : cands)
        if (c == sv) return;
      cands.push_back(sv);
    };
    if (prev_sv) add(*prev_sv);
    for (const HistoryEntry& e : clone.entries()) add(e.bv);
    if (ctx.tuples) {
      const auto it =
          ctx.tuples->find(tuple_key(ctx.orig->planes[0].row(gy) + gx));
      if (it != ctx.tuples->end()) {
        const std::vector<int32_t>& list = it->second;
        const int32_t cur = gy * ctx.width() + gx;
        auto lb = std::lower_bound(list.begin(), list.end(), cur);
        int collected = 0;
        int steps = 0;
        // Earlier raster positions first, nearest first. The window bound
        // keeps the scan cheap on pages full of one repeated tuple.
        for (auto jt = lb; jt != list.begin() && steps < 64 && collected < 12;
             ++steps) {
          --jt;
          const int sx = *jt % ctx.width();
          const int sy = *jt / ctx.width();
          if (ctx.rsm.valid_rect(sx, sy, 4, 1)) {
            add({sx - gx, sy - gy});
            ++collected;
          }
        }
      }
    }
    int best_len = 0;
    BlockVector best_sv;
    for (const BlockVector& sv : cands) {
      const int len = string_match_length(ctx, sv, x, y, size, pos) & ~3;
      if (len > best_len) {
        best_len = len;
        best_sv = sv;
      }
    }
    if (best_len < 4) return std::nullopt;
    IscRun run;
    run.sv = best_sv;
    run.length = best_len;
    const auto& entries = clone.entries();
    for (size_t i = 0; i < entries.size(); ++i)
      if (entries[i].bv == best_sv) {
        run.predicted = true;
        run.pred_index = static_cast<uint32_t>(i);
        break;
      }
    clone.update(best_sv, gx, gy, best_len);
    runs.push_back(run);
    prev_sv = best_sv;
    pos += best_len;
  }
  return runs;
}

void try_string_copy(const CodingCtx& ctx, int x, int y, int size,
                     double lambda, std::optional<CandEval>& best) {
  std::optional<std::vector<IscRun>> runs = string_copy_search(ctx, x, y,
                                                               size);
  if (!runs) return;
  CuDecision d;
  d.mode = CuMode::kStringCopy;
  d.runs = std::move(*runs);
  consider(best, evaluate(ctx, std::move(d), x, y, size, lambda));
}

// ---------------------------------------------------------------------------
// Palette construction

void try_palette(const CodingCtx& ctx, int x, int y, int size, double lambda,
                 std::optional<CandEval>& best) {
  const QuantParams qp{ctx.hdr->qp, ctx.lossless()};
  const bool joint = ctx.chroma() == ChromaFormat::k444;
  const int comps = joint ? 3 : 1;
  std::vector<PaletteEntry> pixels;
  pixels.reserve(static_cast<size_t>(size) * size);
  for (int row = 0; row < size; ++row)
    for (int i = 0; i < size; ++i) {
      PaletteEntry e{};
      for (int c = 0; c < comps; ++c)
        e[static_cast<size_t>(c)] =
            ctx.orig->planes[static_cast<size_t>(c)].at(x + i, y + row);
      pixels.push_back(e);
    }
  DerivedPalette dp = derive_palette(pixels, ctx.predictor, 31);
  if (dp.palette.empty()) return;

  CuDecision d;
  d.mode = CuMode::kPalette;
  d.palette = dp.palette;
  d.reuse_indices = dp.reuse_indices;
  d.new_entries = dp.new_entries;
  const int palette_size = static_cast<int>(d.palette.size());
  d.indices.assign(static_cast<size_t>(size) * size, 0);
  for (int row = 0; row < size; ++row)
    for (int i = 0; i < size; ++i) {
      const PaletteEntry& px =
          pixels[static_cast<size_t>(row) * size + i];
      int idx = palette_size;  // escape unless an exact entry matches
      for (int e = 0; e < palette_size; ++e)
        if (d.palette[static_cast<size_t>(e)] == px) {
          idx = e;
          break;
        }
      d.indices[static_cast<size_t>(row) * size + i] =
          static_cast<uint8_t>(idx);
    }
  for (int i = 0; i < size * size; ++i) {
    auto [sx, sy] = traverse_pos(i, size);
    if (d.indices[static_cast<size_t>(sy) * size + sx] != palette_size)
      continue;
    const PaletteEntry& px = pixels[static_cast<size_t>(sy) * size + sx];
    std::array<int32_t, 3> esc{};
    for (int c = 0; c < comps; ++c) {
      const int v = px[static_cast<size_t>(c)];
      esc[static_cast<size_t>(c)] = ctx.lossless() ? v : quantize(v, qp, 0);
    }
    d.escapes.push_back(esc);
  }
  if (ctx.chroma() == ChromaFormat::k420) {
    const int cn = size / 2;
    for (int p = 1; p <= 2; ++p) {
      std::vector<int32_t> pred(static_cast<size_t>(cn) * cn);
      predict_intra(ctx, p, CuMode::kIntraDc, x / 2, y / 2, cn, pred.data());
      std::vector<int32_t> levels(static_cast<size_t>(cn) * cn);
      bool cbf = false;
      for (int row = 0; row < cn; ++row)
        for (int i = 0; i < cn; ++i) {
          const int32_t r =
              static_cast<int32_t>(
                  ctx.orig->planes[static_cast<size_t>(p)].at(x / 2 + i,
                                                              y / 2 + row)) -
              pred[static_cast<size_t>(row) * cn + i];
          const int32_t lvl = ctx.lossless() ? r : quantize(r, qp, 0);
          levels[static_cast<size_t>(row) * cn + i] = lvl;
          cbf = cbf || lvl != 0;
        }
      d.plt_chroma_cbf[static_cast<size_t>(p - 1)] = cbf;
      if (cbf)
        d.plt_chroma_levels[static_cast<size_t>(p - 1)] = std::move(levels);
    }
  }
  consider(best, evaluate(ctx, std::move(d), x, y, size, lambda));
}

// ---------------------------------------------------------------------------
// Mode decision and quadtree

CandEval mode_decide_cu(const CodingCtx& ctx, int x, int y, int size,
                        double lambda) {
  std::optional<CandEval> best;
  for (CuMode mode : ctx.mode_list) {
    switch (mode) {
      case CuMode::kIbc:
        try_block_copy(ctx, x, y, size, lambda, best);
        break;
      case CuMode::kPalette:
        try_palette(ctx, x, y, size, lambda, best);
        break;
      case CuMode::kStringCopy:
        try_string_copy(ctx, x, y, size, lambda, best);
        break;
      default:
        try_predictive_mode(ctx, mode, false, 0, BlockVector{}, x, y, size,
                            lambda, best);
        break;
    }
  }
  // The four intra modes are always in the list, so a best always exists.
  return std::move(*best);
}

struct PlanNode {
  int x = 0;
  int y = 0;
  int size = 0;
  bool outside = false;
  bool split = false;
  bool write_flag = false;
  CuDecision d;
  std::array<std::unique_ptr<PlanNode>, 4> child;
};

struct NodeEval {
  double cost = 0.0;
  uint64_t bits = 0;
  std::unique_ptr<PlanNode> plan;
};

// Decides one quadtree node, committing the winning branch into ctx. A leaf
// is kept unless splitting is strictly cheaper, so ties collapse to larger
// units and both trials roll back through snapshots before the verdict.
NodeEval encode_node(CodingCtx& ctx, int x, int y, int size, double lambda) {
  NodeEval out;
  out.plan = std::make_unique<PlanNode>();
  out.plan->x = x;
  out.plan->y = y;
  out.plan->size = size;
  if (x >= ctx.width() || y >= ctx.height()) {
    out.plan->outside = true;
    return out;
  }
  const bool partial = x + size > ctx.width() || y + size > ctx.height();
  if (size == 128 || partial) {
    out.plan->split = true;
    const int h = size / 2;
    const int offs[4][2] = {{0, 0}, {h, 0}, {0, h}, {h, h}};
    for (int c = 0; c < 4; ++c) {
      NodeEval ce =
          encode_node(ctx, x + offs[c][0], y + offs[c][1], h, lambda);
      out.cost += ce.cost;
      out.bits += ce.bits;
      out.plan->child[static_cast<size_t>(c)] = std::move(ce.plan);
    }
    return out;
  }

  const bool flagged = size > 4;
  const size_t trace_h0 = ctx.trace.history.size();
  const size_t trace_p0 = ctx.trace.predictor.size();
  Snapshot s0 = take_snapshot(ctx, x, y, size);

  ctx.rsm.prepare_region(x, y);
  CandEval leaf = mode_decide_cu(ctx, x, y, size, lambda);
  const uint64_t leaf_bits = leaf.bits + (flagged ? 1 : 0);
  const double leaf_cost =
      leaf.dist + lambda * static_cast<double>(leaf_bits);
  commit_cu(ctx, leaf.d, x, y, size);
  const std::vector<uint64_t> tail_h(ctx.trace.history.begin() +
                                         static_cast<ptrdiff_t>(trace_h0),
                                     ctx.trace.history.end());
  const std::vector<uint64_t> tail_p(ctx.trace.predictor.begin() +
                                         static_cast<ptrdiff_t>(trace_p0),
                                     ctx.trace.predictor.end());

  if (!flagged) {
    out.cost = leaf_cost;
    out.bits = leaf_bits;
    out.plan->d = std::move(leaf.d);
    return out;
  }

  Snapshot s_leaf = take_snapshot(ctx, x, y, size);
  restore_snapshot(ctx, s0, x, y, size);
  ctx.trace.history.resize(trace_h0);
  ctx.trace.predictor.resize(trace_p0);

  NodeEval split;
  split.plan = std::make_unique<PlanNode>();
  split.cost = lambda;  // the split flag bit
  split.bits = 1;
  {
    const int h = size / 2;
    const int offs[4][2] = {{0, 0}, {h, 0}, {0, h}, {h, h}};
    for (int c = 0; c < 4; ++c) {
      NodeEval ce =
          encode_node(ctx, x + offs[c][0], y + offs[c][1], h, lambda);
      split.cost += ce.cost;
      split.bits += ce.bits;
      split.plan->child[static_cast<size_t>(c)] = std::move(ce.plan);
    }
  }

  if (split.cost < leaf_cost) {
    out.cost = split.cost;
    out.bits = split.bits;
    out.plan->split = true;
    out.plan->write_flag = true;
    out.plan->child = std::move(split.plan->child);
    return out;
  }

  restore_snapshot(ctx, s_leaf, x, y, size);
  ctx.trace.history.resize(trace_h0);
  ctx.trace.predictor.resize(trace_p0);
  ctx.trace.history.insert(ctx.trace.history.end(), tail_h.begin(),
                           tail_h.end());
  ctx.trace.predictor.insert(ctx.trace.predictor.end(), tail_p.begin(),
                             tail_p.end());
  out.cost = leaf_cost;
  out.bits = leaf_bits;
  out.plan->write_flag = true;
  out.plan->d = std::move(leaf.d);
  return out;
}

void serialize_node(BitWriter& writer, const CodingCtx& ctx,
                    const PlanNode& node) {
  if (node.outside) return;
  if (node.write_flag) writer.put_bit(node.split ? 1 : 0);
  if (node.split) {
    for (const auto& c : node.child) serialize_node(writer, ctx, *c);
    return;
  }
  write_cu(writer, ctx, node.d, node.size);
}

// ---------------------------------------------------------------------------
// Frame and stream assembly

struct FrameResult {
  std::vector<uint8_t> payload;
  FrameStats stats;
  FrameTrace trace;
  Frame recon;
};

FrameResult encode_frame(const StreamHeader& hdr, const Frame& frame) {
  CodingCtx ctx = make_coding_ctx(hdr);
  ctx.orig = &frame;
  BlockHashTable hash8;
  BlockHashTable hash16;
  TupleIndex tuples;
  if (hdr.tools & kToolIbc) {
    hash8.build(frame.planes[0], 8);
    hash16.build(frame.planes[0], 16);
    ctx.hash8 = &hash8;
    ctx.hash16 = &hash16;
  }
  if (hdr.tools & kToolStringCopy) {
    tuples = build_tuple_index(frame.planes[0]);
    ctx.tuples = &tuples;
  }
  const double lambda = rd_lambda(hdr);

  BitWriter writer;
  for (int cy = 0; cy < ctx.height(); cy += 128)
    for (int cx = 0; cx < ctx.width(); cx += 128) {
      if (cx == 0) {
        ctx.history.clear();
        ctx.predictor.clear();
      }
      ctx.rsm.begin_ctu(cx, cy);
      NodeEval root = encode_node(ctx, cx, cy, 128, lambda);
      serialize_node(writer, ctx, *root.plan);
    }
  writer.byte_align();

  FrameResult out;
  out.payload = writer.take();
  // Mirrors the decoder: the filter never runs on lossless streams.
  if ((hdr.tools & kToolDeblock) && !hdr.lossless())
    deblock_frame(&ctx.recon, ctx.map);
  out.stats = compute_stats(ctx, out.payload.size() * 8);
  out.trace = std::move(ctx.trace);
  out.recon = std::move(ctx.recon);
  return out;
}

}  // namespace
}  // namespace internal

EncodeResult encode_video(const std::vector<Frame>& frames,
                          const CodecConfig& config) {
  using internal::FrameResult;

  if (frames.empty()) throw std::invalid_argument("no frames to encode");
  const Frame& first = frames.front();
  for (const Frame& f : frames)
    if (f.width() != first.width() || f.height() != first.height() ||
        f.chroma != first.chroma || f.color != first.color)
      throw std::invalid_argument("frames disagree on format");
  if (first.width() <= 0 || first.height() <= 0 ||
      first.width() > 65535 || first.height() > 65535)
    throw std::invalid_argument("frame dimensions out of range");
  if (config.qp < 0 || config.qp > 51)
    throw std::invalid_argument("qp out of range");
  if (config.threads < 1)
    throw std::invalid_argument("thread count must be at least 1");
  if ((config.tools & ~kToolAllMask) != 0)
    throw std::invalid_argument("unknown tool bits");
  if (first.color == ColorSpace::kRgb && first.chroma != ChromaFormat::k444)
    throw std::invalid_argument("RGB frames must be 4:4:4");

  StreamHeader hdr;
  hdr.width = static_cast<uint16_t>(first.width());
  hdr.height = static_cast<uint16_t>(first.height());
  hdr.chroma_code = first.color == ColorSpace::kRgb ? kChromaCodeRgb
                    : first.chroma == ChromaFormat::kMono
                        ? kChromaCodeMono
                    : first.chroma == ChromaFormat::k420 ? kChromaCode420
                                                         : kChromaCode444;
  hdr.ctu_size = 128;
  hdr.qp = static_cast<uint8_t>(config.qp);
  hdr.tools = config.tools;
  hdr.frame_count = static_cast<uint32_t>(frames.size());
  validate_header(hdr, false);

  std::vector<FrameResult> results(frames.size());
  if (config.threads == 1 || frames.size() == 1) {
    for (size_t i = 0; i < frames.size(); ++i)
      results[i] = internal::encode_frame(hdr, frames[i]);
  } else {
    // Frames are independent; workers pull indices and any output bit is
    // identical to the single-thread run.
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(frames.size());
    auto worker = [&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= frames.size()) return;
        try {
          results[i] = internal::encode_frame(hdr, frames[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const size_t n = std::min<size_t>(static_cast<size_t>(config.threads),
                                      frames.size());
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  EncodeResult out;
  std::vector<std::vector<uint8_t>> payloads;
  payloads.reserve(results.size());
  for (FrameResult& r : results) {
    payloads.push_back(std::move(r.payload));
    out.recon.push_back(std::move(r.recon));
    out.stats.push_back(r.stats);
    out.traces.push_back(std::move(r.trace));
  }
  out.stream = write_container(hdr, payloads);
  return out;
}

}  // namespace scc
