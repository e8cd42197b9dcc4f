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

#ifndef WBPC_BITPLANE_HPP_
#define WBPC_BITPLANE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wbpc {

// Maximum plane depth d (sign plane included) representable in a block
// header.
inline constexpr unsigned kMaxDepth = 63;

enum class BlockKind : uint8_t {
  kLowPass = 0,   // LL coefficients
  kHighPass = 1,  // multiplexed LH, HL, HH coefficients
};

inline constexpr std::size_t band_count(BlockKind kind) {
  return kind == BlockKind::kLowPass ? 1 : 3;
}

// Band order inside a high-pass block.
enum HighBand : std::size_t { kBandLH = 0, kBandHL = 1, kBandHH = 2 };

// One tile of wavelet coefficients. Every band is width x height,
// row-major; width is a multiple of 4, height a multiple of 2.
struct CoefficientBlock {
  uint32_t width = 0;
  uint32_t height = 0;
  BlockKind kind = BlockKind::kLowPass;
  unsigned depth = 1;  // d: sign plane + magnitude planes
  std::vector<std::vector<int32_t>> bands;

  static CoefficientBlock zeros(uint32_t width, uint32_t height, BlockKind kind,
                                unsigned depth = 1);

  int32_t& at(std::size_t band, std::size_t row, std::size_t col) {
    return bands[band][row * width + col];
  }
  int32_t at(std::size_t band, std::size_t row, std::size_t col) const {
    return bands[band][row * width + col];
  }

  // Throws kShape on bad geometry, kDepthOverflow when a magnitude does not
  // fit in depth - 1 bits.
  void validate() const;

  bool operator==(const CoefficientBlock&) const = default;
};

// Smallest d such that every |c| < 2^(d-1); at least 1.
unsigned required_depth(std::span<const int32_t> coeffs);
unsigned required_depth(const CoefficientBlock& block);

// Signed-magnitude bitplanes. Plane 0 is the sign plane (1 = negative),
// planes 1..d-1 are magnitude bits from MSB to LSB. One byte per bit,
// laid out [band][plane][row][col].
struct BitplaneCube {
  uint32_t width = 0;
  uint32_t height = 0;
  unsigned depth = 0;
  std::size_t bands = 0;
  std::vector<uint8_t> bits;

  BitplaneCube() = default;
  BitplaneCube(uint32_t w, uint32_t h, unsigned d, std::size_t band_count)
      : width(w), height(h), depth(d), bands(band_count),
        bits(band_count * d * w * h, 0) {}

  std::size_t index(std::size_t band, unsigned plane, std::size_t row,
                    std::size_t col) const {
    return ((band * depth + plane) * height + row) * width + col;
  }
  uint8_t bit(std::size_t band, unsigned plane, std::size_t row,
              std::size_t col) const {
    return bits[index(band, plane, row, col)];
  }
  void set_bit(std::size_t band, unsigned plane, std::size_t row,
               std::size_t col, uint8_t v) {
    bits[index(band, plane, row, col)] = v;
  }

  bool operator==(const BitplaneCube&) const = default;
};

BitplaneCube to_smr_planes(const CoefficientBlock& block);
CoefficientBlock from_smr_planes(const BitplaneCube& cube, BlockKind kind);

// Top-left corner (row, col) of a 2-row x 4-column area and the plane order
// index it belongs to.
struct AreaCoordinate {
  uint32_t row = 0;
  uint32_t col = 0;
  uint32_t plane = 0;

  bool operator==(const AreaCoordinate&) const = default;
};

inline constexpr std::size_t areas_per_plane(uint32_t w, uint32_t h) {
  return static_cast<std::size_t>(w) * h / 8;
}

// Position k of the serialized area stream of one band -> area coordinate.
//
// Within a plane (k' = k mod w*h/8) areas come in vertical pairs: k' even is
// the upper area, k' odd the one below it, so each pair covers a 4x4 cell.
// Cells run left to right across a 4-row band, bands run top to bottom:
//
//   plane = floor(k / (w*h/8))
//   col   = 4 * (floor(k'/2) mod (w/4))
//   row   = 4 * floor(k' / (w/2)) + 2 * (k' mod 2)
//
// When h is not a multiple of 4 the last band is only 2 rows tall and its
// areas run left to right one at a time. Throws kIndex for k out of range,
// kShape for invalid w/h.
AreaCoordinate area_coordinate(std::size_t k, uint32_t w, uint32_t h,
                               unsigned d);

// S = sum over the 2x4 area of B(m, n) * 2^((n - col) + 4 (m - row)).
uint8_t area_to_symbol(const BitplaneCube& cube, std::size_t band,
                       const AreaCoordinate& c);
void symbol_to_area(uint8_t symbol, BitplaneCube& cube, std::size_t band,
                    const AreaCoordinate& c);

// 8-bit area symbols with the start index of each plane slot. A slot is one
// (plane order index, band) pair; slots are ordered plane-major, bands
// LH, HL, HH within a plane for high-pass blocks.
struct SymbolStream {
  std::vector<uint8_t> symbols;
  std::vector<std::size_t> plane_boundaries;

  std::size_t plane_count() const { return plane_boundaries.size(); }
  std::span<const uint8_t> plane(std::size_t slot) const {
    const std::size_t end = slot + 1 < plane_boundaries.size()
                                ? plane_boundaries[slot + 1]
                                : symbols.size();
    return std::span<const uint8_t>(symbols).subspan(
        plane_boundaries[slot], end - plane_boundaries[slot]);
  }

  bool operator==(const SymbolStream&) const = default;
};

// Serializes every plane of every band: depth * bands * w*h/8 symbols.
SymbolStream serialize_block(const CoefficientBlock& block);

// Inverse of serialize_block for a stream with depth * bands slots.
CoefficientBlock deserialize_block(const SymbolStream& stream, uint32_t width,
                                   uint32_t height, BlockKind kind,
                                   unsigned depth);

}  // namespace wbpc

#endif  // WBPC_BITPLANE_HPP_
