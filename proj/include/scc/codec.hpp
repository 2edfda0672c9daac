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

#ifndef SCC_CODEC_HPP_
#define SCC_CODEC_HPP_

#include <cstdint>
#include <vector>

#include "scc/container.hpp"
#include "scc/frame.hpp"

namespace scc {

struct CodecConfig {
  int qp = 27;
  uint16_t tools = kToolIbc | kToolPalette | kToolTransformSkip | kToolBdpcm |
                   kToolStringCopy | kToolDeblock;
  int threads = 1;
};

struct FrameStats {
  uint64_t payload_bits = 0;
  // Percent of coded luma area per mode class.
  double area_intra = 0.0;
  double area_ibc = 0.0;
  double area_palette = 0.0;
  double area_string = 0.0;
};

// State checksums recorded after every CU, in coding order. Encoder and
// decoder must produce identical traces; tests compare them to prove the
// two sides run the same predictor state machines.
struct FrameTrace {
  std::vector<uint64_t> history;
  std::vector<uint64_t> predictor;
};

struct EncodeResult {
  std::vector<uint8_t> stream;
  std::vector<Frame> recon;  // what a decoder will output, deblocking included
  std::vector<FrameStats> stats;
  std::vector<FrameTrace> traces;
};

struct DecodeResult {
  StreamHeader header;
  std::vector<Frame> frames;
  std::vector<FrameStats> stats;
  std::vector<FrameTrace> traces;
};

// Encodes frames (all must share dimensions, chroma format and color space)
// into a self-contained stream. Frames are coded independently, so worker
// threads only change wall time, never a single output bit. Throws
// std::invalid_argument for inconsistent input or configuration.
EncodeResult encode_video(const std::vector<Frame>& frames,
                          const CodecConfig& config);

// Decodes a stream produced by encode_video. Throws BitstreamError for any
// malformed input, including copy references into invalid sample memory.
DecodeResult decode_stream(const std::vector<uint8_t>& bytes);

}  // namespace scc

#endif  // SCC_CODEC_HPP_
