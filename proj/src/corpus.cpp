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

#include "scc/corpus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace scc {

namespace {

struct Color {
  uint8_t c0, c1, c2;
};

// Raw engine draws only; std distributions are not bit-stable across
// implementations.
uint32_t draw(std::mt19937& rng, uint32_t n) { return rng() % n; }

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Fixed 8x8 glyph shapes; row 7 and bit 0 stay clear for spacing.
uint8_t glyph_row_bits(int ch, int row) {
  if (row == 7) return 0;
  return static_cast<uint8_t>(
      splitmix64(static_cast<uint64_t>(ch) * 131 + row) & 0x7e);
}

class Painter {
 public:
  explicit Painter(Frame* f) : f_(f) {
    const bool sub = f->chroma == ChromaFormat::k420;
    shift_ = sub ? 1 : 0;
  }

  void fill(int x, int y, int w, int h, Color c) {
    fill_plane(0, x, y, w, h, c.c0);
    if (f_->planes.size() < 3) return;
    const int s = shift_;
    fill_plane(1, x >> s, y >> s, ((x + w + (1 << s) - 1) >> s) - (x >> s),
               ((y + h + (1 << s) - 1) >> s) - (y >> s), c.c1);
    fill_plane(2, x >> s, y >> s, ((x + w + (1 << s) - 1) >> s) - (x >> s),
               ((y + h + (1 << s) - 1) >> s) - (y >> s), c.c2);
  }

  void glyph(int x, int y, int ch, Color c) {
    for (int r = 0; r < 8; ++r) {
      const uint8_t bits = glyph_row_bits(ch, r);
      for (int i = 0; i < 8; ++i)
        if (bits & (1u << i)) fill(x + i, y + r, 1, 1, c);
    }
  }

 private:
  void fill_plane(int p, int x, int y, int w, int h, uint8_t v) {
    PlaneBuffer& plane = f_->planes[static_cast<size_t>(p)];
    const int x0 = std::max(0, x), y0 = std::max(0, y);
    const int x1 = std::min(plane.width(), x + w);
    const int y1 = std::min(plane.height(), y + h);
    for (int yy = y0; yy < y1; ++yy)
      std::fill(plane.row(yy) + x0, plane.row(yy) + x1, v);
  }

  Frame* f_;
  int shift_;
};

struct LineToken {
  int16_t ch;         // glyph code, -1 for a space cell
  uint8_t color_idx;  // into the text color set
};

void paint_text_page(Painter& paint, std::mt19937& rng, int w, int top,
                     int bottom, bool rgb) {
  const Color bg = rgb ? Color{240, 240, 240} : Color{235, 128, 128};
  const Color fg = rgb ? Color{30, 30, 35} : Color{24, 128, 128};
  const Color accents[4] = {
      rgb ? Color{200, 40, 40} : Color{80, 90, 240},
      rgb ? Color{40, 150, 60} : Color{145, 54, 34},
      rgb ? Color{50, 60, 220} : Color{41, 240, 110},
      rgb ? Color{220, 150, 30} : Color{170, 166, 16},
  };
  paint.fill(0, top, w, bottom - top, bg);

  // Small word pool so many words repeat verbatim across the page.
  std::vector<std::vector<int>> pool;
  for (int i = 0; i < 12; ++i) {
    std::vector<int> word(2 + draw(rng, 6));
    for (int& ch : word) ch = static_cast<int>(draw(rng, 62));
    pool.push_back(std::move(word));
  }

  std::vector<std::vector<LineToken>> lines;
  int line_no = 0;
  for (int y = top + 4; y + 8 <= bottom - 2; y += 10, ++line_no) {
    std::vector<LineToken> line;
    if (!lines.empty() && draw(rng, 4) == 0) {
      line = lines[draw(rng, static_cast<uint32_t>(lines.size()))];
    } else {
      const int cells = (w - 8) / 8;
      int used = 0;
      while (used < cells - 8) {
        const std::vector<int>& word =
            pool[draw(rng, static_cast<uint32_t>(pool.size()))];
        uint8_t color_idx = 0;
        if (draw(rng, 10) == 0)
          color_idx = static_cast<uint8_t>(1 + draw(rng, 4));
        for (int ch : word)
          line.push_back({static_cast<int16_t>(ch), color_idx});
        line.push_back({-1, 0});
        used += static_cast<int>(word.size()) + 1;
      }
    }
    int x = 4;
    for (const LineToken& t : line) {
      if (t.ch >= 0) {
        const Color c = t.color_idx == 0 ? fg : accents[t.color_idx - 1];
        paint.glyph(x, y, t.ch, c);
      }
      x += 8;
      if (x + 8 > w - 4) break;
    }
    if (line_no % 6 == 5) paint.fill(4, y + 8, w - 8, 1, fg);
    lines.push_back(std::move(line));
  }
}

void paint_ui_panel(Painter& paint, std::mt19937& rng, int x0, int y0, int w,
                    int h, bool rgb) {
  // Distinct flat levels keep the region palette-codable even when chroma
  // is subsampled (4:2:0 palettes cover luma only).
  const uint8_t levels[8] = {24, 56, 88, 120, 152, 184, 216, 240};
  Color pal[5];
  uint8_t taken[8] = {};
  for (Color& c : pal) {
    uint32_t pick;
    do {
      pick = draw(rng, 8);
    } while (taken[pick]);
    taken[pick] = 1;
    c = rgb ? Color{levels[pick], levels[(pick + 3) & 7],
                    levels[(pick + 5) & 7]}
            : Color{levels[pick], static_cast<uint8_t>(96 + 16 * (pick & 3)),
                    static_cast<uint8_t>(160 - 16 * (pick >> 1))};
  }

  paint.fill(x0, y0, w, h, pal[0]);
  paint.fill(x0, y0, w, 16, pal[1]);  // title bar
  for (int i = x0 + 8; i + 6 < x0 + w / 2; i += 10)
    paint.fill(i, y0 + 6, 6, 4, pal[2]);  // title ticks

  // Identical buttons stamped on a grid: verbatim repeats for block copy.
  for (int by = y0 + 24; by + 24 <= y0 + h - 4; by += 40)
    for (int bx = x0 + 8; bx + 48 <= x0 + w - 4; bx += 64) {
      paint.fill(bx, by, 48, 24, pal[2]);
      paint.fill(bx + 2, by + 2, 44, 20, pal[3]);
      for (int i = 0; i < 4; ++i)
        paint.fill(bx + 8 + i * 8, by + 8, 4, 8, pal[4]);
    }
}

void paint_natural(Frame* f, std::mt19937& rng, int x0, int y0, int w, int h,
                   bool rgb) {
  // Smooth ramps plus low-amplitude noise: content where transforms beat
  // the screen-content tools.
  PlaneBuffer& p0 = f->planes[0];
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) {
      const int gx = ((x - x0) * 112) / std::max(1, w);
      const int gy = ((y - y0) * 64) / std::max(1, h);
      const int noise = static_cast<int>(draw(rng, 9)) - 4;
      p0.set(x, y, clip_u8(96 + gx + gy / 2 + noise));
    }
  if (f->planes.size() < 3) return;
  const int s = f->chroma == ChromaFormat::k420 ? 1 : 0;
  for (int plane = 1; plane <= 2; ++plane) {
    PlaneBuffer& pb = f->planes[static_cast<size_t>(plane)];
    for (int y = y0 >> s; y < (y0 + h) >> s; ++y)
      for (int x = x0 >> s; x < (x0 + w) >> s; ++x) {
        const int g = ((x - (x0 >> s)) * 48) / std::max(1, w >> s);
        pb.set(x, y,
               clip_u8(rgb ? 80 + g * (3 - plane)
                           : 112 + (plane == 1 ? g : 32 - g)));
      }
  }
}

}  // namespace

CorpusKind corpus_kind_from_string(const std::string& name) {
  if (name == "text") return CorpusKind::kText;
  if (name == "ui") return CorpusKind::kUi;
  if (name == "mixed") return CorpusKind::kMixed;
  throw std::invalid_argument("unknown corpus kind: " + name);
}

const char* corpus_kind_name(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kText: return "text";
    case CorpusKind::kUi: return "ui";
    default: return "mixed";
  }
}

Frame synth_frame(CorpusKind kind, uint32_t seed, int index, int width,
                  int height, ChromaFormat chroma, ColorSpace color) {
  if (color == ColorSpace::kRgb && chroma != ChromaFormat::k444)
    throw std::invalid_argument("RGB frames are 4:4:4");
  Frame f = make_frame(width, height, chroma, color);
  const bool rgb = color == ColorSpace::kRgb;
  std::mt19937 rng(seed ^ (0x9e3779b9u * static_cast<uint32_t>(index + 1)) ^
                   (static_cast<uint32_t>(kind) << 24));
  Painter paint(&f);
  switch (kind) {
    case CorpusKind::kText:
      paint_text_page(paint, rng, width, 0, height, rgb);
      break;
    case CorpusKind::kUi: {
      paint_ui_panel(paint, rng, 0, 0, width, height, rgb);
      break;
    }
    case CorpusKind::kMixed: {
      const int split = ((height * 2 / 5) / 8) * 8;
      paint_text_page(paint, rng, width, 0, split, rgb);
      const int half = ((width / 2) / 8) * 8;
      paint_natural(&f, rng, 0, split, half, height - split, rgb);
      paint_ui_panel(paint, rng, half, split, width - half, height - split,
                     rgb);
      break;
    }
  }
  return f;
}

std::vector<Frame> synth_clip(CorpusKind kind, uint32_t seed, int count,
                              int width, int height, ChromaFormat chroma,
                              ColorSpace color) {
  std::vector<Frame> frames;
  frames.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    frames.push_back(synth_frame(kind, seed, i, width, height, chroma, color));
  return frames;
}

}  // namespace scc
