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

#ifndef WBPC_BLOCK_CODEC_HPP_
#define WBPC_BLOCK_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wbpc/bitplane.hpp"
#include "wbpc/entropy.hpp"

namespace wbpc {

// Block dimensions and kind are not stored in the block; the container
// supplies them.
struct BlockGeometry {
  uint32_t width = 0;
  uint32_t height = 0;
  BlockKind kind = BlockKind::kLowPass;
};

// Field widths of the block header.
inline constexpr unsigned kDepthBits = 6;
inline constexpr unsigned kCounterWidthBits = 5;
inline constexpr unsigned kZeroRunSymbolBits = 8;
inline constexpr unsigned kSeekCountBits = 16;

// t = floor(log2(p * w * h / 8)) + 5 with p = plane slots (d or 3d).
unsigned seek_entry_bits(std::size_t plane_slots, uint32_t width,
                         uint32_t height);

// Parsed header of a compressed block.
struct BlockHeader {
  unsigned depth = 0;
  unsigned counter_width = 0;
  uint8_t zr_symbol = 0;
  std::vector<uint64_t> masks;  // per band; bit b set = plane b stored
  bool has_tree = false;
  HuffmanCode code;
  unsigned seek_bits = 0;
  std::vector<std::size_t> seek;          // relative to payload start
  std::vector<std::size_t> stored_slots;  // slot = plane * bands + band
  std::size_t header_bits = 0;            // payload starts here

  std::size_t bands() const { return masks.size(); }
};

// Header layout, MSB-first and not byte aligned:
//   depth d (6) | counter width (5) | zero-run symbol (8)
//   | empty-plane masks (d bits per band, plane 0 first)
//   | Huffman tree (omitted when no plane is stored)
//   | seek entry count (16) | seek entries (t bits each) | payload
// The block is zero padded to a byte boundary.
std::vector<uint8_t> encode_block(const CoefficientBlock& block);

// Throws kParse on a malformed header, kCorruption on inconsistent seek data.
BlockHeader parse_block_header(std::span<const uint8_t> bytes,
                               const BlockGeometry& geometry);

// Decodes planes with order index < keep_planes (all planes when keep_planes
// >= d). Dropped planes read as zero bits.
CoefficientBlock decode_block(std::span<const uint8_t> bytes,
                              const BlockGeometry& geometry,
                              unsigned keep_planes = kMaxDepth);

struct PlaneOffset {
  std::size_t band = 0;
  unsigned plane = 0;
  std::size_t bit_offset = 0;  // relative to payload start

  bool operator==(const PlaneOffset&) const = default;
};

std::vector<PlaneOffset> plane_offsets(std::span<const uint8_t> bytes,
                                       const BlockGeometry& geometry);

// Symbols of the index-th stored plane, decoded by seeking straight to its
// seek entry.
std::vector<uint8_t> decode_stored_plane(std::span<const uint8_t> bytes,
                                         const BlockGeometry& geometry,
                                         std::size_t index);

// Drops the planes_dropped least significant planes by cutting the payload
// at the first dropped plane's seek offset and rewriting masks and the seek
// table. No retained plane is entropy decoded.
std::vector<uint8_t> truncate_block(std::span<const uint8_t> bytes,
                                    const BlockGeometry& geometry,
                                    unsigned planes_dropped);

}  // namespace wbpc

#endif  // WBPC_BLOCK_CODEC_HPP_
