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

#ifndef SCC_CORPUS_HPP_
#define SCC_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "scc/frame.hpp"

namespace scc {

// Synthetic screen-content generator. Output depends only on the arguments
// (fixed RNG, fixed draw order), so corpora regenerate bit-identically on
// any platform.
enum class CorpusKind {
  kText,   // document page: glyph runs, repeated lines, separators
  kUi,     // flat-color desktop: windows, button grids, few colors
  kMixed,  // text on top, smooth gradient+noise and widgets below
};

CorpusKind corpus_kind_from_string(const std::string& name);
const char* corpus_kind_name(CorpusKind kind);

Frame synth_frame(CorpusKind kind, uint32_t seed, int index, int width,
                  int height, ChromaFormat chroma,
                  ColorSpace color = ColorSpace::kYCbCr);

std::vector<Frame> synth_clip(CorpusKind kind, uint32_t seed, int count,
                              int width, int height, ChromaFormat chroma,
                              ColorSpace color = ColorSpace::kYCbCr);

}  // namespace scc

#endif  // SCC_CORPUS_HPP_
