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

#ifndef SCC_BITIO_HPP_
#define SCC_BITIO_HPP_

#include <cstdint>
#include <vector>

#include "scc/errors.hpp"

namespace scc {

// MSB-first bit sink backed by a byte vector. byte_align() pads with zeros.
class BitWriter {
 public:
  void put_bit(uint32_t bit) {
    cur_ = static_cast<uint8_t>((cur_ << 1) | (bit & 1));
    if (++fill_ == 8) {
      bytes_.push_back(cur_);
      cur_ = 0;
      fill_ = 0;
    }
  }

  void put_bits(uint64_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit((value >> i) & 1);
  }

  // Order-0 exp-Golomb: v=0 -> "1", 1 -> "010", 2 -> "011", 8 -> "0001001".
  void put_ue(uint32_t v) {
    const uint64_t code = static_cast<uint64_t>(v) + 1;
    int len = 0;
    while ((code >> len) > 1) ++len;
    put_bits(0, len);
    put_bits(code, len + 1);
  }

  // Signed mapping: v>0 -> 2v-1, v<=0 -> -2v (0->0, 1->1, -1->2, 2->3, ...).
  void put_se(int32_t v) {
    put_ue(v > 0 ? static_cast<uint32_t>(2 * static_cast<int64_t>(v) - 1)
                 : static_cast<uint32_t>(-2 * static_cast<int64_t>(v)));
  }

  void byte_align() {
    while (fill_ != 0) put_bit(0);
  }

  size_t bit_count() const { return bytes_.size() * 8 + fill_; }

  // Only meaningful after byte_align().
  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t> take() {
    byte_align();
    return std::move(bytes_);
  }

 private:
  std::vector<uint8_t> bytes_;
  uint8_t cur_ = 0;
  int fill_ = 0;
};

// Rate estimation sink with the BitWriter interface; counts bits only.
class BitCounter {
 public:
  void put_bit(uint32_t) { ++bits_; }
  void put_bits(uint64_t, int count) { bits_ += static_cast<size_t>(count); }
  void put_ue(uint32_t v) {
    const uint64_t code = static_cast<uint64_t>(v) + 1;
    int len = 0;
    while ((code >> len) > 1) ++len;
    bits_ += static_cast<size_t>(2 * len + 1);
  }
  void put_se(int32_t v) {
    put_ue(v > 0 ? static_cast<uint32_t>(2 * static_cast<int64_t>(v) - 1)
                 : static_cast<uint32_t>(-2 * static_cast<int64_t>(v)));
  }
  void byte_align() { bits_ = (bits_ + 7) & ~size_t{7}; }
  size_t bit_count() const { return bits_; }

 private:
  size_t bits_ = 0;
};

// MSB-first reader over a byte span. Reading past the end, or non-zero
// padding where zero padding is required, raises BitstreamError.
class BitReader {
 public:
  BitReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}
  explicit BitReader(const std::vector<uint8_t>& bytes)
      : BitReader(bytes.data(), bytes.size()) {}

  uint32_t get_bit() {
    if (pos_ >= size_ * 8) throw BitstreamError("bit reader: stream exhausted");
    const uint32_t bit = (data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return bit;
  }

  uint64_t get_bits(int count) {
    uint64_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | get_bit();
    return v;
  }

  uint32_t get_ue() {
    int zeros = 0;
    while (get_bit() == 0) {
      if (++zeros > 32) throw BitstreamError("exp-golomb: prefix too long");
    }
    const uint64_t code = (uint64_t{1} << zeros) | get_bits(zeros);
    return static_cast<uint32_t>(code - 1);
  }

  int32_t get_se() {
    const uint32_t u = get_ue();
    return (u & 1) ? static_cast<int32_t>((u + 1) / 2)
                   : -static_cast<int32_t>(u / 2);
  }

  // Consumes up to the next byte boundary and verifies the padding is zero.
  void byte_align_checked() {
    while (pos_ & 7) {
      if (get_bit() != 0) throw BitstreamError("non-zero padding bits");
    }
  }

  size_t bit_pos() const { return pos_; }
  size_t bits_left() const { return size_ * 8 - pos_; }

 private:
  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

}  // namespace scc

#endif  // SCC_BITIO_HPP_
