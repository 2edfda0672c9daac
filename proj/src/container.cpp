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

#include "scc/container.hpp"

#include <stdexcept>
#include <string>

#include "scc/errors.hpp"

namespace scc {

namespace {

constexpr uint8_t kMagic[4] = {'S', 'C', 'C', 'F'};
constexpr uint8_t kVersion = 1;

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
}

struct Cursor {
  const std::vector<uint8_t>& bytes;
  size_t pos = 0;

  uint8_t u8() {
    if (pos >= bytes.size()) throw BitstreamError("container truncated");
    return bytes[pos++];
  }
  uint16_t u16() {
    const uint16_t lo = u8();
    return static_cast<uint16_t>(lo | (static_cast<uint16_t>(u8()) << 8));
  }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(u8()) << (8 * i);
    return v;
  }
};

[[noreturn]] void fail(bool from_stream, const std::string& msg) {
  if (from_stream) throw BitstreamError(msg);
  throw std::invalid_argument(msg);
}

}  // namespace

void validate_header(const StreamHeader& h, bool from_stream) {
  if (h.ctu_size != 128)
    fail(from_stream,
         "unsupported CTU size " + std::to_string(int(h.ctu_size)) +
             " (only 128 is defined)");
  if (h.chroma_code > kChromaCodeRgb)
    fail(from_stream, "unknown chroma format code");
  if (h.width == 0 || h.height == 0 || h.width % 4 != 0 || h.height % 4 != 0)
    fail(from_stream, "frame dimensions must be positive multiples of 4");
  if (h.qp > 51) fail(from_stream, "QP out of range [0, 51]");
  if ((h.tools & ~kToolAllMask) != 0)
    fail(from_stream, "unknown tool flag bits set");
  if ((h.tools & kToolBdpcm) && !(h.tools & kToolTransformSkip))
    fail(from_stream, "BDPCM requires transform skip");
  if ((h.tools & kToolColorTransform) && h.chroma_code != kChromaCodeRgb)
    fail(from_stream, "color transform requires an RGB stream");
}

std::vector<uint8_t> write_container(
    const StreamHeader& header,
    const std::vector<std::vector<uint8_t>>& payloads) {
  validate_header(header, false);
  if (payloads.size() != header.frame_count)
    throw std::invalid_argument("frame count does not match payloads");
  std::vector<uint8_t> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  put_u16(out, header.width);
  put_u16(out, header.height);
  out.push_back(header.chroma_code);
  out.push_back(header.ctu_size);
  out.push_back(header.qp);
  put_u16(out, header.tools);
  put_u32(out, header.frame_count);
  for (const std::vector<uint8_t>& p : payloads) {
    put_u32(out, static_cast<uint32_t>(p.size()));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

ParsedContainer parse_container(const std::vector<uint8_t>& bytes) {
  Cursor cur{bytes};
  for (uint8_t m : kMagic)
    if (cur.u8() != m) throw BitstreamError("bad container magic");
  if (cur.u8() != kVersion) throw BitstreamError("unsupported version");
  ParsedContainer out;
  out.header.width = cur.u16();
  out.header.height = cur.u16();
  out.header.chroma_code = cur.u8();
  out.header.ctu_size = cur.u8();
  out.header.qp = cur.u8();
  out.header.tools = cur.u16();
  out.header.frame_count = cur.u32();
  validate_header(out.header, true);
  for (uint32_t i = 0; i < out.header.frame_count; ++i) {
    const uint32_t len = cur.u32();
    if (cur.pos + len > bytes.size())
      throw BitstreamError("frame payload truncated");
    out.payloads.emplace_back(bytes.begin() + static_cast<ptrdiff_t>(cur.pos),
                              bytes.begin() +
                                  static_cast<ptrdiff_t>(cur.pos + len));
    cur.pos += len;
  }
  if (cur.pos != bytes.size())
    throw BitstreamError("trailing bytes after last frame");
  return out;
}

}  // namespace scc
