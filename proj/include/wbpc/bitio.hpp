// Copyright 2026 The wbpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WBPC_BITIO_HPP_
#define WBPC_BITIO_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wbpc/error.hpp"

namespace wbpc {

// MSB-first bit packer.
class BitWriter {
 public:
  // Appends the low nbits of value, most significant first. nbits <= 32.
  void write(uint32_t value, unsigned nbits) {
    if (nbits == 0) return;
    acc_ = (acc_ << nbits) | (value & mask(nbits));
    acc_bits_ += nbits;
    bits_ += nbits;
    while (acc_bits_ >= 8) {
      acc_bits_ -= 8;
      bytes_.push_back(static_cast<uint8_t>(acc_ >> acc_bits_));
    }
  }

  void write_bit(bool bit) { write(bit ? 1u : 0u, 1); }

  // Number of bits written so far.
  std::size_t position() const { return bits_; }

  // Pads the final byte with zeros and returns the buffer.
  std::vector<uint8_t> finish() && {
    if (acc_bits_ > 0) {
      bytes_.push_back(static_cast<uint8_t>(acc_ << (8 - acc_bits_)));
      acc_bits_ = 0;
    }
    return std::move(bytes_);
  }

 private:
  static uint64_t mask(unsigned n) { return (uint64_t{1} << n) - 1; }

  std::vector<uint8_t> bytes_;
  uint64_t acc_ = 0;
  unsigned acc_bits_ = 0;
  std::size_t bits_ = 0;
};

// MSB-first bit reader over a byte span. Reading past the end throws
// kTruncated.
class BitReader {
 public:
  BitReader() = default;
  explicit BitReader(std::span<const uint8_t> bytes)
      : bytes_(bytes), limit_(bytes.size() * 8) {}

  std::size_t position() const { return pos_; }
  std::size_t limit() const { return limit_; }
  std::size_t remaining() const { return limit_ - pos_; }

  void seek(std::size_t bit) {
    if (bit > limit_) throw Error(ErrorKind::kTruncated, "seek past end");
    pos_ = bit;
  }

  // Next nbits (<= 32) without consuming; bits past the end read as 0.
  uint32_t peek(unsigned nbits) const {
    if (nbits == 0) return 0;
    return static_cast<uint32_t>(window() >> (64 - nbits));
  }

  void skip(unsigned nbits) {
    if (nbits > limit_ - pos_) {
      throw Error(ErrorKind::kTruncated, "read past end of stream");
    }
    pos_ += nbits;
  }

  uint32_t read(unsigned nbits) {
    const uint32_t v = peek(nbits);
    skip(nbits);
    return v;
  }

  bool read_bit() { return read(1) != 0; }

 private:
  // 64 bits starting at pos_, left-aligned; at least 57 are meaningful.
  uint64_t window() const {
    const std::size_t byte = pos_ >> 3;
    uint64_t w = 0;
    if (byte + 8 <= bytes_.size()) {
      for (int i = 0; i < 8; ++i) w = (w << 8) | bytes_[byte + i];
    } else {
      for (std::size_t i = 0; i < 8; ++i) {
        w = (w << 8) | (byte + i < bytes_.size() ? bytes_[byte + i] : 0);
      }
    }
    return w << (pos_ & 7);
  }

  std::span<const uint8_t> bytes_;
  std::size_t limit_ = 0;
  std::size_t pos_ = 0;
};

// Copies bits [begin, end) of src onto the end of dst.
inline void copy_bits(std::span<const uint8_t> src, std::size_t begin,
                      std::size_t end, BitWriter& dst) {
  BitReader r(src);
  r.seek(begin);
  std::size_t left = end - begin;
  while (left >= 32) {
    dst.write(r.read(32), 32);
    left -= 32;
  }
  if (left > 0) dst.write(r.read(static_cast<unsigned>(left)),
                          static_cast<unsigned>(left));
}

}  // namespace wbpc

#endif  // WBPC_BITIO_HPP_
