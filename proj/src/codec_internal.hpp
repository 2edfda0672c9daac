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

#ifndef SCC_SRC_CODEC_INTERNAL_HPP_
#define SCC_SRC_CODEC_INTERNAL_HPP_

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "scc/bitio.hpp"
#include "scc/codec.hpp"
#include "scc/container.hpp"
#include "scc/cu_types.hpp"
#include "scc/errors.hpp"
#include "scc/frame.hpp"
#include "scc/hash_match.hpp"
#include "scc/history.hpp"
#include "scc/palette.hpp"
#include "scc/quant.hpp"
#include "scc/residual.hpp"
#include "scc/rsm.hpp"
#include "scc/ycocg.hpp"

namespace scc {
namespace internal {

// Mode list in bitstream index order for the given tool set.
std::vector<CuMode> build_mode_list(uint16_t tools);

// Horizontal 4-sample tuples of the original luma plane, keyed for the
// string-copy search. Values are raster indices (y * width + x), ascending.
using TupleIndex = std::unordered_map<uint32_t, std::vector<int32_t>>;
TupleIndex build_tuple_index(const PlaneBuffer& plane);
uint32_t tuple_key(const uint8_t* four);

// Everything one frame's coding loop needs. The encoder and decoder hold
// identical state here and mutate it exclusively through commit_cu, which
// is how bit-exact reconstruction lockstep is enforced.
struct CodingCtx {
  const StreamHeader* hdr = nullptr;
  std::vector<CuMode> mode_list;

  // Encoder-only search structures built over the original frame; the
  // decoder leaves them null. They never affect reconstruction, only which
  // candidates the encoder tries.
  const Frame* orig = nullptr;
  const BlockHashTable* hash8 = nullptr;
  const BlockHashTable* hash16 = nullptr;
  const TupleIndex* tuples = nullptr;

  Frame recon;
  std::vector<uint8_t> coded;  // per 4x4 luma cell
  CuMap map;
  ReferenceSampleMemory rsm;
  HistoryVectorTable history;
  PalettePredictor predictor;
  uint32_t next_cu_id = 1;
  FrameTrace trace;

  int width() const { return hdr->width; }
  int height() const { return hdr->height; }
  int cells_w() const { return (width() + 3) / 4; }
  bool lossless() const { return hdr->lossless(); }
  bool rgb() const { return hdr->chroma_code == kChromaCodeRgb; }
  ChromaFormat chroma() const { return hdr->chroma(); }
  int plane_count() const { return recon.plane_count(); }

  bool cell_coded(int lx, int ly) const {
    return coded[static_cast<size_t>(ly / 4) * cells_w() + lx / 4] != 0;
  }
  void mark_coded(int x, int y, int w, int h) {
    for (int cy = y / 4; cy < (y + h) / 4; ++cy)
      for (int cx = x / 4; cx < (x + w) / 4; ++cx)
        coded[static_cast<size_t>(cy) * cells_w() + cx] = 1;
  }
  // Whether the reconstructed sample at plane coords (px, py) may serve as
  // an intra reference: inside the picture and owned by a committed CU.
  bool sample_available(int plane, int px, int py) const {
    if (px < 0 || py < 0) return false;
    const PlaneBuffer& pb = recon.planes[static_cast<size_t>(plane)];
    if (px >= pb.width() || py >= pb.height()) return false;
    const int shift = (plane > 0 && chroma() == ChromaFormat::k420) ? 1 : 0;
    return cell_coded(px << shift, py << shift);
  }
};

CodingCtx make_coding_ctx(const StreamHeader& hdr);

struct IscRun {
  bool predicted = false;
  uint32_t pred_index = 0;
  BlockVector sv;
  int length = 0;  // luma samples, multiple of 4
};

// One residual block: a plane-aligned square tile of the CU, at most 32
// samples on a side. `ox`/`oy` are sample offsets inside the CU's block on
// that plane.
struct ResBlock {
  int plane = 0;
  int ox = 0;
  int oy = 0;
  int n = 0;
  bool cbf = false;
  std::vector<int32_t> levels;
};

// A fully explicit coding choice for one CU. Serialization is a pure
// function of this struct, which lets the encoder count candidate bits with
// the same code path that writes the final stream.
struct CuDecision {
  CuMode mode = CuMode::kIntraDc;
  bool act = false;

  bool bv_predicted = false;
  int bv_class = 0;
  BlockVector bv;

  std::vector<int> reuse_indices;
  std::vector<PaletteEntry> new_entries;
  std::vector<PaletteEntry> palette;
  std::vector<uint8_t> indices;                  // size*size, row-major
  std::vector<std::array<int32_t, 3>> escapes;   // traverse-scan order
  std::array<std::vector<int32_t>, 2> plt_chroma_levels;
  std::array<bool, 2> plt_chroma_cbf{false, false};

  std::vector<IscRun> runs;

  ResidualMode rmode = ResidualMode::kTransform;
  std::vector<ResBlock> blocks;
};

// Geometry of the residual blocks of a CU: one tile per plane, split into
// four quadrants when a plane block exceeds 32 samples on a side.
std::vector<ResBlock> residual_layout(const CodingCtx& ctx, int size);

// Levels -> residual samples for one tile (empty levels mean a zero tile).
// The encoder reconstructs candidates through this exact function.
void decode_residual_tile(ResidualMode rmode, const QuantParams& qp,
                          const std::vector<int32_t>& levels, int n,
                          int32_t* resid);

// Plane block size and subsample shift for a CU of `size` on `plane`.
inline int plane_shift(const CodingCtx& ctx, int plane) {
  return (plane > 0 && ctx.chroma() == ChromaFormat::k420) ? 1 : 0;
}

inline bool mode_allows_act(CuMode m) { return m != CuMode::kPalette && m != CuMode::kStringCopy; }

// Color-space rotation used when a CU codes its residual in the transformed
// domain. The lossless variant must pair with the lifting inverse.
inline ColorTriple act_forward(bool lossless, int r, int g, int b) {
  return lossless ? ycocg_lossless_forward(r, g, b)
                  : ycocg_lossy_forward(r, g, b);
}

inline bool signals_act(const CodingCtx& ctx, CuMode m) {
  return ctx.rgb() && (ctx.hdr->tools & kToolColorTransform) != 0 &&
         mode_allows_act(m);
}

// Intra prediction (predict.cpp). Reference substitution scans the left
// column bottom-up then the above row left-to-right; a missing first
// element takes the first available one, later gaps copy their predecessor,
// and a fully unavailable set predicts mid-gray.
void predict_intra(const CodingCtx& ctx, int plane, CuMode mode, int px,
                   int py, int n, int32_t* out);

// Serializes one CU. Stateless given the decision, so BitWriter and
// BitCounter sinks produce identical bit counts by construction.
template <typename Sink>
void write_cu(Sink& sink, const CodingCtx& ctx, const CuDecision& d,
              int size) {
  uint32_t mode_idx = 0;
  while (ctx.mode_list[mode_idx] != d.mode) ++mode_idx;
  sink.put_ue(mode_idx);
  if (signals_act(ctx, d.mode)) sink.put_bit(d.act ? 1 : 0);

  if (d.mode == CuMode::kIbc) {
    sink.put_bit(d.bv_predicted ? 1 : 0);
    if (d.bv_predicted) {
      sink.put_bits(static_cast<uint32_t>(d.bv_class), 3);
    } else {
      sink.put_se(d.bv.x);
      sink.put_se(d.bv.y);
    }
  } else if (d.mode == CuMode::kPalette) {
    const int comps = ctx.chroma() == ChromaFormat::k444 ? 3 : 1;
    sink.put_ue(static_cast<uint32_t>(d.reuse_indices.size()));
    int prev = -1;
    for (int idx : d.reuse_indices) {
      sink.put_ue(static_cast<uint32_t>(idx - prev - 1));
      prev = idx;
    }
    sink.put_ue(static_cast<uint32_t>(d.new_entries.size()));
    for (const PaletteEntry& e : d.new_entries)
      for (int c = 0; c < comps; ++c) sink.put_bits(e[static_cast<size_t>(c)], 8);
    const int palette_size = static_cast<int>(d.palette.size());
    write_index_map(sink, d.indices.data(), size, size, palette_size);
    for (const auto& esc : d.escapes)
      for (int c = 0; c < comps; ++c) {
        if (ctx.lossless())
          sink.put_bits(static_cast<uint32_t>(esc[static_cast<size_t>(c)]), 8);
        else
          sink.put_ue(static_cast<uint32_t>(esc[static_cast<size_t>(c)]));
      }
    if (ctx.chroma() == ChromaFormat::k420) {
      const int cn = size / 2;
      for (int p = 0; p < 2; ++p) {
        sink.put_bit(d.plt_chroma_cbf[static_cast<size_t>(p)] ? 1 : 0);
        if (d.plt_chroma_cbf[static_cast<size_t>(p)])
          write_levels(sink, d.plt_chroma_levels[static_cast<size_t>(p)].data(),
                       cn, cn);
      }
    }
    return;  // palette CUs carry no further residual
  } else if (d.mode == CuMode::kStringCopy) {
    for (const IscRun& run : d.runs) {
      sink.put_bit(run.predicted ? 1 : 0);
      if (run.predicted) {
        sink.put_ue(run.pred_index);
      } else {
        sink.put_se(run.sv.x);
        sink.put_se(run.sv.y);
      }
      sink.put_ue(static_cast<uint32_t>(run.length / 4 - 1));
    }
    return;  // string copies carry no residual
  }

  // Residual switches for intra and block-copy CUs.
  const bool tsm = (ctx.hdr->tools & kToolTransformSkip) != 0;
  const bool bdpcm = (ctx.hdr->tools & kToolBdpcm) != 0;
  if (!ctx.lossless() && tsm)
    sink.put_bit(is_transform_skip(d.rmode) ? 1 : 0);
  if ((ctx.lossless() || is_transform_skip(d.rmode)) && bdpcm) {
    const bool on = d.rmode == ResidualMode::kTsBdpcmH ||
                    d.rmode == ResidualMode::kTsBdpcmV;
    sink.put_bit(on ? 1 : 0);
    if (on) sink.put_bit(d.rmode == ResidualMode::kTsBdpcmV ? 1 : 0);
  }
  for (const ResBlock& b : d.blocks) {
    sink.put_bit(b.cbf ? 1 : 0);
    if (b.cbf) write_levels(sink, b.levels.data(), b.n, b.n);
  }
}

// Parses one CU, resolving predicted vectors against the current history
// state (string runs against a local clone that evolves run by run, exactly
// as commit_cu will evolve the real table).
CuDecision parse_cu(const CodingCtx& ctx, BitReader& reader, int x, int y,
                    int size);

// Prediction samples for every plane of one intra or block-copy CU.
// Throws BitstreamError when a copy source is not in valid sample memory.
std::array<std::vector<int32_t>, 3> build_prediction(const CodingCtx& ctx,
                                                     CuMode mode,
                                                     BlockVector bv, int x,
                                                     int y, int size);

// The normative reconstruction: prediction, residual, clipping. Reads ctx
// but never writes it; throws BitstreamError when a copy source is not in
// valid sample memory.
struct CuSamples {
  std::array<std::vector<uint8_t>, 3> plane;  // sized per plane block
};
CuSamples reconstruct_cu_samples(const CodingCtx& ctx, const CuDecision& d,
                                 int x, int y, int size);

// Applies a decision: writes samples into the frame and sample memory,
// marks cells, updates history/predictor state and appends trace
// checksums. Shared verbatim by the encoder and the decoder.
void commit_cu(CodingCtx& ctx, const CuDecision& d, int x, int y, int size);

// Mode-area percentages from the committed CU map.
FrameStats compute_stats(const CodingCtx& ctx, uint64_t payload_bits);

}  // namespace internal
}  // namespace scc

#endif  // SCC_SRC_CODEC_INTERNAL_HPP_
