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

#ifndef SCC_FRAME_HPP_
#define SCC_FRAME_HPP_

#include <cstdint>
#include <vector>

namespace scc {

enum class ChromaFormat : uint8_t {
  kMono = 0,   // one plane
  k420 = 1,    // chroma at half resolution in both directions
  k444 = 2,    // three full-resolution planes
};

enum class ColorSpace : uint8_t {
  kYCbCr = 0,
  kRgb = 1,  // planes ordered R, G, B; always 4:4:4
};

// One 8-bit sample plane. Row-major, no padding.
class PlaneBuffer {
 public:
  PlaneBuffer() = default;
  PlaneBuffer(int width, int height, uint8_t fill = 0)
      : width_(width), height_(height),
        samples_(static_cast<size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }

  uint8_t at(int x, int y) const {
    return samples_[static_cast<size_t>(y) * width_ + x];
  }
  void set(int x, int y, uint8_t v) {
    samples_[static_cast<size_t>(y) * width_ + x] = v;
  }
  const uint8_t* row(int y) const {
    return samples_.data() + static_cast<size_t>(y) * width_;
  }
  uint8_t* row(int y) {
    return samples_.data() + static_cast<size_t>(y) * width_;
  }
  const std::vector<uint8_t>& samples() const { return samples_; }
  std::vector<uint8_t>& samples() { return samples_; }

  bool operator==(const PlaneBuffer&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> samples_;
};

// An 8-bit picture. Plane order is Y,Cb,Cr for YCbCr and R,G,B for RGB.
// Frames are treated as immutable once loaded and are safe to share across
// encoder worker threads.
struct Frame {
  ChromaFormat chroma = ChromaFormat::k420;
  ColorSpace color = ColorSpace::kYCbCr;
  std::vector<PlaneBuffer> planes;

  int width() const { return planes.empty() ? 0 : planes[0].width(); }
  int height() const { return planes.empty() ? 0 : planes[0].height(); }
  int plane_count() const { return static_cast<int>(planes.size()); }

  bool operator==(const Frame&) const = default;
};

// Chroma plane dimensions round up so odd pictures keep full coverage.
inline int chroma_width(int luma_width, ChromaFormat f) {
  return f == ChromaFormat::k420 ? (luma_width + 1) / 2 : luma_width;
}
inline int chroma_height(int luma_height, ChromaFormat f) {
  return f == ChromaFormat::k420 ? (luma_height + 1) / 2 : luma_height;
}

inline Frame make_frame(int width, int height, ChromaFormat chroma,
                        ColorSpace color = ColorSpace::kYCbCr,
                        uint8_t luma_fill = 0, uint8_t chroma_fill = 128) {
  Frame f;
  f.chroma = chroma;
  f.color = color;
  f.planes.emplace_back(width, height, luma_fill);
  if (chroma != ChromaFormat::kMono) {
    const int cw = chroma_width(width, chroma);
    const int ch = chroma_height(height, chroma);
    f.planes.emplace_back(cw, ch, chroma_fill);
    f.planes.emplace_back(cw, ch, chroma_fill);
  }
  return f;
}

inline uint8_t clip_u8(int v) {
  return static_cast<uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

}  // namespace scc

#endif  // SCC_FRAME_HPP_
