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

#ifndef WBPC_CONTAINER_HPP_
#define WBPC_CONTAINER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "wbpc/bitplane.hpp"
#include "wbpc/block_codec.hpp"
#include "wbpc/image.hpp"
#include "wbpc/parallel.hpp"
#include "wbpc/transforms.hpp"

namespace wbpc {

inline constexpr char kMagic[4] = {'W', 'B', 'P', 'C'};
inline constexpr uint8_t kVersion = 1;
inline constexpr uint32_t kDefaultBlockDim = 128;
inline constexpr std::size_t kHeaderBytes = 24;
inline constexpr std::size_t kIndexEntryBytes = 12;

enum class ColorTransform : uint8_t { kNone = 0, kRct = 1 };

// Fixed 24-byte little-endian file header:
//   0 magic "WBPC" | 4 version u8 | 5 channels u8 | 6 bit_depth u8
//   7 color transform u8 | 8 levels u8 | 9 reserved u8 (0)
//   10 block_dim u16 | 12 width u32 | 16 height u32 | 20 block count u32
// followed by block count index entries (offset u64, length u32) and the
// blocks themselves.
struct ContainerHeader {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 0;
  uint32_t bit_depth = 0;
  ColorTransform color = ColorTransform::kNone;
  int levels = 0;
  uint32_t block_dim = kDefaultBlockDim;

  bool operator==(const ContainerHeader&) const = default;
};

// Identifies one compressed block. Low-pass blocks exist only at
// level == levels; high-pass blocks at levels 1..levels.
struct BlockKey {
  uint32_t channel = 0;
  int level = 0;
  BlockKind kind = BlockKind::kLowPass;
  uint32_t row = 0;
  uint32_t col = 0;

  bool operator==(const BlockKey&) const = default;
};

struct TileGrid {
  uint32_t cols = 0;
  uint32_t rows = 0;
};

// Everything derivable from the header: band extents, tile grids, block
// order and block geometry.
class ContainerLayout {
 public:
  explicit ContainerLayout(const ContainerHeader& header);

  const ContainerHeader& header() const { return header_; }

  // Extent of LL_level (level 0 is the image).
  Extent level_extent(int level) const;

  // Extent of a band at level >= 1: kBandLH / kBandHL / kBandHH.
  Extent band_extent(int level, std::size_t band) const;

  TileGrid grid(int level, BlockKind kind) const;

  // File order: per channel, the LL grid, then high-pass grids from the
  // coarsest level down to level 1; grids are row-major.
  const std::vector<BlockKey>& keys() const { return keys_; }
  std::size_t block_index(const BlockKey& key) const;
  std::size_t block_count() const { return keys_.size(); }

  BlockGeometry geometry(const BlockKey& key) const;

  // Valid (unpadded) width x height of a band inside a tile.
  Extent tile_extent(const BlockKey& key, std::size_t band) const;

 private:
  ContainerHeader header_;
  std::vector<BlockKey> keys_;
  std::vector<std::size_t> grid_base_;  // per (channel, level slot)
};

struct IndexEntry {
  uint64_t offset = 0;
  uint32_t length = 0;
};

// Parsed, validated container. Read-only after construction; safe to share
// between threads.
class ContainerReader {
 public:
  explicit ContainerReader(std::vector<uint8_t> bytes);
  static ContainerReader open(const std::filesystem::path& path);

  const ContainerHeader& header() const { return layout_.header(); }
  const ContainerLayout& layout() const { return layout_; }
  const std::vector<IndexEntry>& index() const { return index_; }
  std::span<const uint8_t> bytes() const { return bytes_; }

  std::span<const uint8_t> block_bytes(std::size_t index) const;

  // Decodes a block, dropping planes_dropped planes relative to its own d.
  CoefficientBlock decode(std::size_t index, unsigned planes_dropped) const;

 private:
  std::vector<uint8_t> bytes_;
  ContainerLayout layout_;
  std::vector<IndexEntry> index_;
};

struct EncodeOptions {
  int levels = -1;  // < 0: default_levels()
  bool rct = false;
  uint32_t block_dim = kDefaultBlockDim;
  ExecutionPolicy policy;
};

std::vector<uint8_t> encode_image(const RasterImage& img,
                                  const EncodeOptions& options = {});

struct DecodeOptions {
  int level = 0;
  unsigned planes_dropped = 0;
  ExecutionPolicy policy;
};

// Reconstruction at a resolution level as signed planes (after the inverse
// color transform, before clamping). With planes_dropped == 0 each plane is
// exactly LL_level of the forward transform.
std::vector<ChannelPlane> decode_planes(const ContainerReader& reader,
                                        const DecodeOptions& options = {});

RasterImage decode_image(std::span<const uint8_t> bytes,
                         const DecodeOptions& options = {});
RasterImage decode_image(const ContainerReader& reader,
                         const DecodeOptions& options = {});

struct Rect {
  uint32_t x = 0;
  uint32_t y = 0;
  uint32_t width = 0;
  uint32_t height = 0;
};

// Decodes only the blocks under the synthesis support of rect (given in
// level pixel coordinates). Equal to cropping decode_planes.
std::vector<ChannelPlane> decode_region_planes(const ContainerReader& reader,
                                               const Rect& rect,
                                               const DecodeOptions& options = {});

RasterImage decode_region(std::span<const uint8_t> bytes, const Rect& rect,
                          const DecodeOptions& options = {});
RasterImage decode_region(const ContainerReader& reader, const Rect& rect,
                          const DecodeOptions& options = {});

// Number of distinct blocks decode_region_planes touches for rect.
std::size_t region_block_count(const ContainerReader& reader, const Rect& rect,
                               int level);

// Lower-quality copy of the container: every block loses planes_dropped
// planes (relative to its own d) without re-encoding.
std::vector<uint8_t> truncate_stream(std::span<const uint8_t> bytes,
                                     unsigned planes_dropped,
                                     const ExecutionPolicy& policy = {});

struct ContainerStats {
  std::map<unsigned, std::size_t> depth_histogram;
  std::size_t header_bytes = 0;  // file header + index
  std::size_t block_header_bits = 0;
  std::size_t payload_bits = 0;  // includes final byte padding
  std::size_t block_bytes = 0;
};
ContainerStats container_stats(const ContainerReader& reader);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                std::span<const uint8_t> bytes);

}  // namespace wbpc

#endif  // WBPC_CONTAINER_HPP_
