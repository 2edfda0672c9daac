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

#ifndef SCC_ERRORS_HPP_
#define SCC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scc {

// Unreadable/unwritable files and malformed media containers (y4m/ppm).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or non-conformant coded streams. Decoders throw this instead of
// reading out of bounds; the CLI maps it to its own exit code.
class BitstreamError : public std::runtime_error {
 public:
  explicit BitstreamError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace scc

#endif  // SCC_ERRORS_HPP_
