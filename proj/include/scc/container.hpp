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

#ifndef SCC_CONTAINER_HPP_
#define SCC_CONTAINER_HPP_

#include <cstdint>
#include <vector>

#include "scc/frame.hpp"

namespace scc {

// Coding tool flags carried in the stream header. BDPCM requires
// transform skip; the adaptive color transform requires an RGB stream.
inline constexpr uint16_t kToolIbc = 1u << 0;
inline constexpr uint16_t kToolPalette = 1u << 1;
inline constexpr uint16_t kToolTransformSkip = 1u << 2;
inline constexpr uint16_t kToolBdpcm = 1u << 3;
inline constexpr uint16_t kToolStringCopy = 1u << 4;
inline constexpr uint16_t kToolColorTransform = 1u << 5;
inline constexpr uint16_t kToolDeblock = 1u << 6;
inline constexpr uint16_t kToolLossless = 1u << 7;
inline constexpr uint16_t kToolAllMask = 0x00ff;

// Chroma format codes in the header byte. 4:4:4 appears twice because the
// decoder must know whether planes are YCbCr or RGB (the color transform
// and the output file format depend on it).
inline constexpr uint8_t kChromaCodeMono = 0;
inline constexpr uint8_t kChromaCode420 = 1;
inline constexpr uint8_t kChromaCode444 = 2;
inline constexpr uint8_t kChromaCodeRgb = 3;

struct StreamHeader {
  uint16_t width = 0;
  uint16_t height = 0;
  uint8_t chroma_code = kChromaCode420;
  uint8_t ctu_size = 128;
  uint8_t qp = 27;
  uint16_t tools = 0;
  uint32_t frame_count = 0;

  ChromaFormat chroma() const {
    return chroma_code == kChromaCodeMono ? ChromaFormat::kMono
           : chroma_code == kChromaCode420 ? ChromaFormat::k420
                                           : ChromaFormat::k444;
  }
  ColorSpace color() const {
    return chroma_code == kChromaCodeRgb ? ColorSpace::kRgb
                                         : ColorSpace::kYCbCr;
  }
  bool lossless() const { return (tools & kToolLossless) != 0; }
};

// Throws BitstreamError (parse) or std::invalid_argument (construction)
// when fields are inconsistent: bad magic or version, CTU size other than
// 128, dimensions of zero or not multiples of 4, QP out of [0, 51], BDPCM
// without transform skip, or color transform on a non-RGB stream.
void validate_header(const StreamHeader& header, bool from_stream);

// Little-endian layout: "SCCF", version byte (1), width, height, chroma
// code, CTU size, QP, tool flags, frame count; 18 bytes total. Each frame
// follows as a 4-byte payload length plus that many payload bytes.
std::vector<uint8_t> write_container(
    const StreamHeader& header,
    const std::vector<std::vector<uint8_t>>& payloads);

struct ParsedContainer {
  StreamHeader header;
  std::vector<std::vector<uint8_t>> payloads;
};

ParsedContainer parse_container(const std::vector<uint8_t>& bytes);

}  // namespace scc

#endif  // SCC_CONTAINER_HPP_
