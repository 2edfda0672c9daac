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

#ifndef SCC_MEDIA_IO_HPP_
#define SCC_MEDIA_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "scc/frame.hpp"

namespace scc {

// A YUV4MPEG2 clip. The raw stream-header tail and per-frame FRAME-line tails
// are retained verbatim so emit() reproduces a loaded file byte-for-byte.
struct Y4mVideo {
  int width = 0;
  int height = 0;
  ChromaFormat chroma = ChromaFormat::k420;
  std::string header_tail;               // everything after "YUV4MPEG2"
  std::vector<std::string> frame_tails;  // per frame, usually empty
  std::vector<Frame> frames;
};

Y4mVideo load_y4m(const std::string& path);
Y4mVideo parse_y4m(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> serialize_y4m(const Y4mVideo& video);
void save_y4m(const Y4mVideo& video, const std::string& path);

// Convenience wrapper for synthesized clips: fills in a default header tail.
Y4mVideo wrap_y4m(std::vector<Frame> frames);

// Binary PPM (P6), maxval 255, loaded as an RGB 4:4:4 frame.
Frame load_ppm(const std::string& path);
Frame parse_ppm(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> serialize_ppm(const Frame& frame);
void save_ppm(const Frame& frame, const std::string& path);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);

// Per-plane quality. A bit-exact plane reports lossless=true instead of a
// finite stand-in value.
struct PlaneQuality {
  bool lossless = false;
  double psnr_db = 0.0;
};

PlaneQuality plane_psnr(const PlaneBuffer& ref, const PlaneBuffer& rec);
std::vector<PlaneQuality> frame_psnr(const Frame& ref, const Frame& rec);

}  // namespace scc

#endif  // SCC_MEDIA_IO_HPP_
