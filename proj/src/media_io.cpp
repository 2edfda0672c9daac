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

#include "scc/media_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "scc/errors.hpp"

namespace scc {

namespace {

constexpr char kY4mMagic[] = "YUV4MPEG2";
constexpr char kFrameMagic[] = "FRAME";

struct ByteCursor {
  const std::vector<uint8_t>& bytes;
  size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  size_t left() const { return bytes.size() - pos; }

  std::string read_line() {
    std::string line;
    while (!eof()) {
      const char c = static_cast<char>(bytes[pos++]);
      if (c == '\n') return line;
      line.push_back(c);
    }
    throw IoError("y4m: unterminated header line");
  }

  void read_block(uint8_t* dst, size_t n, const char* what) {
    if (left() < n) throw IoError(std::string("truncated ") + what);
    std::memcpy(dst, bytes.data() + pos, n);
    pos += n;
  }
};

void parse_y4m_params(const std::string& tail, Y4mVideo* out) {
  std::istringstream ss(tail);
  std::string tok;
  std::string cspace = "420";
  while (ss >> tok) {
    switch (tok[0]) {
      case 'W': out->width = std::stoi(tok.substr(1)); break;
      case 'H': out->height = std::stoi(tok.substr(1)); break;
      case 'C': cspace = tok.substr(1); break;
      default: break;  // F/I/A/X tags are retained via header_tail only
    }
  }
  if (out->width <= 0 || out->height <= 0)
    throw IoError("y4m: missing or invalid W/H");
  if (cspace == "420" || cspace == "420jpeg" || cspace == "420mpeg2" ||
      cspace == "420paldv") {
    out->chroma = ChromaFormat::k420;
  } else if (cspace == "444") {
    out->chroma = ChromaFormat::k444;
  } else {
    throw IoError("y4m: unsupported colorspace C" + cspace);
  }
}

void read_plane(ByteCursor* cur, PlaneBuffer* plane, const char* what) {
  cur->read_block(plane->samples().data(), plane->samples().size(), what);
}

}  // namespace

Y4mVideo parse_y4m(const std::vector<uint8_t>& bytes) {
  ByteCursor cur{bytes};
  const std::string header = cur.read_line();
  if (header.rfind(kY4mMagic, 0) != 0) throw IoError("y4m: bad magic");

  Y4mVideo video;
  video.header_tail = header.substr(std::strlen(kY4mMagic));
  parse_y4m_params(video.header_tail, &video);

  while (!cur.eof()) {
    const std::string frame_line = cur.read_line();
    if (frame_line.rfind(kFrameMagic, 0) != 0)
      throw IoError("y4m: expected FRAME marker");
    video.frame_tails.push_back(frame_line.substr(std::strlen(kFrameMagic)));

    Frame f = make_frame(video.width, video.height, video.chroma);
    read_plane(&cur, &f.planes[0], "y4m luma plane");
    read_plane(&cur, &f.planes[1], "y4m chroma plane");
    read_plane(&cur, &f.planes[2], "y4m chroma plane");
    video.frames.push_back(std::move(f));
  }
  return video;
}

std::vector<uint8_t> serialize_y4m(const Y4mVideo& video) {
  std::vector<uint8_t> out;
  auto append = [&out](const void* data, size_t n) {
    const auto* p = static_cast<const uint8_t*>(data);
    out.insert(out.end(), p, p + n);
  };
  append(kY4mMagic, std::strlen(kY4mMagic));
  append(video.header_tail.data(), video.header_tail.size());
  append("\n", 1);
  for (size_t i = 0; i < video.frames.size(); ++i) {
    append(kFrameMagic, std::strlen(kFrameMagic));
    if (i < video.frame_tails.size())
      append(video.frame_tails[i].data(), video.frame_tails[i].size());
    append("\n", 1);
    for (const PlaneBuffer& plane : video.frames[i].planes)
      append(plane.samples().data(), plane.samples().size());
  }
  return out;
}

Y4mVideo load_y4m(const std::string& path) { return parse_y4m(read_file(path)); }

void save_y4m(const Y4mVideo& video, const std::string& path) {
  write_file(path, serialize_y4m(video));
}

Y4mVideo wrap_y4m(std::vector<Frame> frames) {
  Y4mVideo video;
  if (frames.empty()) throw IoError("y4m: cannot wrap zero frames");
  video.width = frames[0].width();
  video.height = frames[0].height();
  video.chroma = frames[0].chroma;
  char buf[96];
  std::snprintf(buf, sizeof(buf), " W%d H%d F30:1 Ip A1:1 C%s", video.width,
                video.height,
                video.chroma == ChromaFormat::k444 ? "444" : "420");
  video.header_tail = buf;
  video.frame_tails.assign(frames.size(), "");
  video.frames = std::move(frames);
  return video;
}

namespace {

// PNM token scan: skips whitespace and '#' comments.
int read_pnm_int(ByteCursor* cur) {
  for (;;) {
    if (cur->eof()) throw IoError("ppm: truncated header");
    const char c = static_cast<char>(cur->bytes[cur->pos]);
    if (c == '#') {
      while (!cur->eof() && cur->bytes[cur->pos] != '\n') ++cur->pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++cur->pos;
    } else {
      break;
    }
  }
  int value = 0;
  bool any = false;
  while (!cur->eof()) {
    const char c = static_cast<char>(cur->bytes[cur->pos]);
    if (c < '0' || c > '9') break;
    value = value * 10 + (c - '0');
    any = true;
    ++cur->pos;
  }
  if (!any) throw IoError("ppm: expected integer");
  return value;
}

}  // namespace

Frame parse_ppm(const std::vector<uint8_t>& bytes) {
  ByteCursor cur{bytes};
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6')
    throw IoError("ppm: bad magic, want P6");
  cur.pos = 2;
  const int w = read_pnm_int(&cur);
  const int h = read_pnm_int(&cur);
  const int maxval = read_pnm_int(&cur);
  if (maxval != 255) throw IoError("ppm: only maxval 255 supported");
  if (cur.eof()) throw IoError("ppm: truncated header");
  ++cur.pos;  // single whitespace byte after maxval

  Frame f = make_frame(w, h, ChromaFormat::k444, ColorSpace::kRgb);
  std::vector<uint8_t> interleaved(static_cast<size_t>(w) * h * 3);
  cur.read_block(interleaved.data(), interleaved.size(), "ppm pixel data");
  for (size_t i = 0; i < static_cast<size_t>(w) * h; ++i) {
    f.planes[0].samples()[i] = interleaved[3 * i + 0];
    f.planes[1].samples()[i] = interleaved[3 * i + 1];
    f.planes[2].samples()[i] = interleaved[3 * i + 2];
  }
  return f;
}

std::vector<uint8_t> serialize_ppm(const Frame& frame) {
  if (frame.color != ColorSpace::kRgb || frame.plane_count() != 3)
    throw IoError("ppm: frame is not RGB 4:4:4");
  char header[64];
  const int n =
      std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", frame.width(),
                    frame.height());
  std::vector<uint8_t> out(header, header + n);
  const size_t pixels = static_cast<size_t>(frame.width()) * frame.height();
  out.reserve(out.size() + pixels * 3);
  for (size_t i = 0; i < pixels; ++i) {
    out.push_back(frame.planes[0].samples()[i]);
    out.push_back(frame.planes[1].samples()[i]);
    out.push_back(frame.planes[2].samples()[i]);
  }
  return out;
}

Frame load_ppm(const std::string& path) { return parse_ppm(read_file(path)); }

void save_ppm(const Frame& frame, const std::string& path) {
  write_file(path, serialize_ppm(frame));
}

std::vector<uint8_t> read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw IoError("cannot open for reading: " + path);
  std::fseek(f, 0, SEEK_END);
  const long size = std::ftell(f);
  std::fseek(f, 0, SEEK_SET);
  std::vector<uint8_t> bytes(size > 0 ? static_cast<size_t>(size) : 0);
  if (!bytes.empty() && std::fread(bytes.data(), 1, bytes.size(), f) !=
                            bytes.size()) {
    std::fclose(f);
    throw IoError("short read: " + path);
  }
  std::fclose(f);
  return bytes;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open for writing: " + path);
  if (!bytes.empty() &&
      std::fwrite(bytes.data(), 1, bytes.size(), f) != bytes.size()) {
    std::fclose(f);
    throw IoError("short write: " + path);
  }
  std::fclose(f);
}

PlaneQuality plane_psnr(const PlaneBuffer& ref, const PlaneBuffer& rec) {
  if (ref.width() != rec.width() || ref.height() != rec.height())
    throw IoError("psnr: plane dimensions differ");
  uint64_t sse = 0;
  const size_t n = ref.samples().size();
  for (size_t i = 0; i < n; ++i) {
    const int d = int{ref.samples()[i]} - int{rec.samples()[i]};
    sse += static_cast<uint64_t>(d) * d;
  }
  if (sse == 0) return {true, 0.0};
  const double mse = static_cast<double>(sse) / static_cast<double>(n);
  return {false, 10.0 * std::log10(255.0 * 255.0 / mse)};
}

std::vector<PlaneQuality> frame_psnr(const Frame& ref, const Frame& rec) {
  if (ref.plane_count() != rec.plane_count())
    throw IoError("psnr: plane counts differ");
  std::vector<PlaneQuality> out;
  for (int i = 0; i < ref.plane_count(); ++i)
    out.push_back(plane_psnr(ref.planes[i], rec.planes[i]));
  return out;
}

}  // namespace scc
