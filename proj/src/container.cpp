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

#include "wbpc/container.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include "wbpc/error.hpp"

namespace wbpc {
namespace {

uint32_t div_up(std::size_t a, uint32_t b) {
  return static_cast<uint32_t>((a + b - 1) / b);
}

template <typename T>
void put_le(std::vector<uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<uint8_t>(static_cast<uint64_t>(v) >> (8 * i)));
  }
}

template <typename T>
T get_le(std::span<const uint8_t> in, std::size_t pos) {
  uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<uint64_t>(in[pos + i]) << (8 * i);
  }
  return static_cast<T>(v);
}

void validate_header(const ContainerHeader& h) {
  if (h.width < 1 || h.height < 1) {
    throw Error(ErrorKind::kParse, "image dimensions must be positive");
  }
  if (h.channels < 1 || h.channels > 4) {
    throw Error(ErrorKind::kParse, "channel count outside [1, 4]");
  }
  if (h.bit_depth < 1 || h.bit_depth > 16) {
    throw Error(ErrorKind::kParse, "bit depth outside [1, 16]");
  }
  if (h.color == ColorTransform::kRct && h.channels != 3) {
    throw Error(ErrorKind::kUnsupportedLayout, "RCT needs 3 channels");
  }
  if (h.levels < 0 || h.levels > kMaxLevels) {
    throw Error(ErrorKind::kLevelRange, "levels outside [0, 8]");
  }
  if (h.block_dim < 4 || h.block_dim % 4 != 0 || h.block_dim > 4096) {
    throw Error(ErrorKind::kParse, "block dimension must be a multiple of 4 "
                                   "in [4, 4096]");
  }
}

// Band plane of a pyramid addressed by block kind / level / band.
ChannelPlane& band_plane(SubbandPyramid& pyr, const BlockKey& key,
                         std::size_t band) {
  if (key.kind == BlockKind::kLowPass) return pyr.ll;
  DetailBands& d = pyr.details[key.level - 1];
  return band == kBandLH ? d.lh : band == kBandHL ? d.hl : d.hh;
}

const ChannelPlane& band_plane(const SubbandPyramid& pyr, const BlockKey& key,
                               std::size_t band) {
  return band_plane(const_cast<SubbandPyramid&>(pyr), key, band);
}

CoefficientBlock extract_block(const ContainerLayout& layout,
                               const SubbandPyramid& pyr, const BlockKey& key) {
  const BlockGeometry g = layout.geometry(key);
  CoefficientBlock block = CoefficientBlock::zeros(g.width, g.height, g.kind);
  const uint32_t bd = layout.header().block_dim;
  for (std::size_t band = 0; band < block.bands.size(); ++band) {
    const Extent e = layout.tile_extent(key, band);
    const ChannelPlane& src = band_plane(pyr, key, band);
    for (std::size_t r = 0; r < e.height; ++r) {
      const auto row = src.row(key.row * bd + r).subspan(key.col * bd, e.width);
      std::copy(row.begin(), row.end(),
                block.bands[band].begin() + r * g.width);
    }
  }
  block.depth = required_depth(block);
  return block;
}

void scatter_block(const ContainerLayout& layout, const CoefficientBlock& block,
                   const BlockKey& key, SubbandPyramid& pyr) {
  const uint32_t bd = layout.header().block_dim;
  for (std::size_t band = 0; band < block.bands.size(); ++band) {
    const Extent e = layout.tile_extent(key, band);
    ChannelPlane& dst = band_plane(pyr, key, band);
    for (std::size_t r = 0; r < e.height; ++r) {
      auto src = block.bands[band].begin() + r * block.width;
      std::copy(src, src + e.width,
                dst.row(key.row * bd + r).begin() + key.col * bd);
    }
  }
}

std::vector<uint8_t> write_container(const ContainerHeader& h,
                                     const std::vector<std::vector<uint8_t>>& blocks) {
  std::vector<uint8_t> out;
  std::size_t total = kHeaderBytes + blocks.size() * kIndexEntryBytes;
  for (const auto& b : blocks) total += b.size();
  out.reserve(total);
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(h.channels));
  out.push_back(static_cast<uint8_t>(h.bit_depth));
  out.push_back(static_cast<uint8_t>(h.color));
  out.push_back(static_cast<uint8_t>(h.levels));
  out.push_back(0);
  put_le<uint16_t>(out, static_cast<uint16_t>(h.block_dim));
  put_le<uint32_t>(out, h.width);
  put_le<uint32_t>(out, h.height);
  put_le<uint32_t>(out, static_cast<uint32_t>(blocks.size()));
  uint64_t offset = kHeaderBytes + blocks.size() * kIndexEntryBytes;
  for (const auto& b : blocks) {
    put_le<uint64_t>(out, offset);
    put_le<uint32_t>(out, static_cast<uint32_t>(b.size()));
    offset += b.size();
  }
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

unsigned block_depth(std::span<const uint8_t> block) {
  if (block.empty()) throw Error(ErrorKind::kParse, "empty block");
  return block[0] >> (8 - kDepthBits);
}

unsigned keep_planes(unsigned depth, unsigned dropped) {
  return depth > dropped ? depth - dropped : 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Layout

ContainerLayout::ContainerLayout(const ContainerHeader& header)
    : header_(header) {
  validate_header(header_);
  const int levels = header_.levels;
  for (uint32_t c = 0; c < header_.channels; ++c) {
    for (int slot = 0; slot <= levels; ++slot) {
      grid_base_.push_back(keys_.size());
      const BlockKind kind = slot == 0 ? BlockKind::kLowPass : BlockKind::kHighPass;
      const int level = slot == 0 ? levels : levels + 1 - slot;
      const TileGrid g = grid(level, kind);
      for (uint32_t r = 0; r < g.rows; ++r) {
        for (uint32_t col = 0; col < g.cols; ++col) {
          keys_.push_back({c, level, kind, r, col});
        }
      }
    }
  }
}

Extent ContainerLayout::level_extent(int level) const {
  return wbpc::level_extent({header_.width, header_.height}, level);
}

Extent ContainerLayout::band_extent(int level, std::size_t band) const {
  const Extent p = level_extent(level - 1);
  switch (band) {
    case kBandLH: return {low_length(p.width), high_length(p.height)};
    case kBandHL: return {high_length(p.width), low_length(p.height)};
    default: return {high_length(p.width), high_length(p.height)};
  }
}

TileGrid ContainerLayout::grid(int level, BlockKind kind) const {
  if (kind == BlockKind::kLowPass && level != header_.levels) return {};
  if (kind == BlockKind::kHighPass && (level < 1 || level > header_.levels)) {
    return {};
  }
  const Extent e = level_extent(level);
  return {div_up(e.width, header_.block_dim), div_up(e.height, header_.block_dim)};
}

std::size_t ContainerLayout::block_index(const BlockKey& key) const {
  const int levels = header_.levels;
  const TileGrid g = grid(key.level, key.kind);
  if (key.channel >= header_.channels || key.row >= g.rows ||
      key.col >= g.cols) {
    throw Error(ErrorKind::kIndex, "no such block");
  }
  const int slot = key.kind == BlockKind::kLowPass ? 0 : levels + 1 - key.level;
  return grid_base_[key.channel * (levels + 1) + slot] + key.row * g.cols +
         key.col;
}

Extent ContainerLayout::tile_extent(const BlockKey& key,
                                    std::size_t band) const {
  const Extent full = key.kind == BlockKind::kLowPass
                          ? level_extent(header_.levels)
                          : band_extent(key.level, band);
  const std::size_t bd = header_.block_dim;
  const std::size_t x0 = key.col * bd, y0 = key.row * bd;
  Extent e;
  e.width = x0 < full.width ? std::min(bd, full.width - x0) : 0;
  e.height = y0 < full.height ? std::min(bd, full.height - y0) : 0;
  return e;
}

BlockGeometry ContainerLayout::geometry(const BlockKey& key) const {
  std::size_t w = 1, h = 1;
  for (std::size_t band = 0; band < band_count(key.kind); ++band) {
    const Extent e = tile_extent(key, band);
    w = std::max(w, e.width);
    h = std::max(h, e.height);
  }
  return {static_cast<uint32_t>((w + 3) / 4 * 4),
          static_cast<uint32_t>((h + 1) / 2 * 2), key.kind};
}

// ---------------------------------------------------------------------------
// Reader

namespace {

ContainerHeader parse_header(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorKind::kParse, "file shorter than the container header");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorKind::kParse, "bad magic, not a WBPC container");
  }
  if (bytes[4] != kVersion) {
    throw Error(ErrorKind::kParse,
                "unsupported version " + std::to_string(bytes[4]));
  }
  ContainerHeader h;
  h.channels = bytes[5];
  h.bit_depth = bytes[6];
  if (bytes[7] > 1) throw Error(ErrorKind::kParse, "unknown color transform");
  h.color = static_cast<ColorTransform>(bytes[7]);
  h.levels = bytes[8];
  h.block_dim = get_le<uint16_t>(bytes, 10);
  h.width = get_le<uint32_t>(bytes, 12);
  h.height = get_le<uint32_t>(bytes, 16);
  validate_header(h);
  return h;
}

}  // namespace

ContainerReader::ContainerReader(std::vector<uint8_t> bytes)
    : bytes_(std::move(bytes)), layout_(parse_header(bytes_)) {
  const uint32_t count = get_le<uint32_t>(bytes_, 20);
  if (count != layout_.block_count()) {
    throw Error(ErrorKind::kCorruption,
                "index has " + std::to_string(count) + " blocks, layout needs " +
                    std::to_string(layout_.block_count()));
  }
  const std::size_t index_end = kHeaderBytes + count * kIndexEntryBytes;
  if (bytes_.size() < index_end) {
    throw Error(ErrorKind::kCorruption, "index extends past end of file");
  }
  index_.resize(count);
  for (uint32_t i = 0; i < count; ++i) {
    const std::size_t pos = kHeaderBytes + i * kIndexEntryBytes;
    index_[i].offset = get_le<uint64_t>(bytes_, pos);
    index_[i].length = get_le<uint32_t>(bytes_, pos + 8);
    const IndexEntry& e = index_[i];
    if (e.length == 0 || e.offset < index_end || e.offset > bytes_.size() ||
        e.length > bytes_.size() - e.offset) {
      throw Error(ErrorKind::kCorruption,
                  "block " + std::to_string(i) + " lies outside the file");
    }
  }
  std::vector<IndexEntry> sorted = index_;
  std::sort(sorted.begin(), sorted.end(),
            [](const IndexEntry& a, const IndexEntry& b) {
              return a.offset < b.offset;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].offset + sorted[i - 1].length > sorted[i].offset) {
      throw Error(ErrorKind::kCorruption, "index entries overlap");
    }
  }
}

ContainerReader ContainerReader::open(const std::filesystem::path& path) {
  return ContainerReader(read_file(path));
}

std::span<const uint8_t> ContainerReader::block_bytes(std::size_t index) const {
  const IndexEntry& e = index_.at(index);
  return std::span<const uint8_t>(bytes_).subspan(e.offset, e.length);
}

CoefficientBlock ContainerReader::decode(std::size_t index,
                                         unsigned planes_dropped) const {
  const auto bytes = block_bytes(index);
  const BlockGeometry g = layout_.geometry(layout_.keys()[index]);
  return decode_block(bytes, g, keep_planes(block_depth(bytes), planes_dropped));
}

// ---------------------------------------------------------------------------
// Encode

std::vector<uint8_t> encode_image(const RasterImage& img,
                                  const EncodeOptions& options) {
  img.validate();
  ContainerHeader h;
  h.width = img.width;
  h.height = img.height;
  h.channels = img.channels;
  h.bit_depth = img.bit_depth;
  h.color = options.rct ? ColorTransform::kRct : ColorTransform::kNone;
  h.levels = options.levels < 0 ? default_levels(img.width, img.height)
                                : options.levels;
  h.block_dim = options.block_dim;
  if (options.rct && img.channels != 3) {
    throw Error(ErrorKind::kUnsupportedLayout,
                "RCT requested for a " + std::to_string(img.channels) +
                    "-channel image");
  }
  const ContainerLayout layout(h);

  std::vector<ChannelPlane> planes;
  if (options.rct) {
    auto ycc = rct_forward(img);
    planes.assign(std::make_move_iterator(ycc.begin()),
                  std::make_move_iterator(ycc.end()));
  } else {
    for (uint32_t c = 0; c < img.channels; ++c) planes.push_back(to_plane(img, c));
  }
  std::vector<SubbandPyramid> pyramids;
  for (const auto& p : planes) {
    pyramids.push_back(dwt2d_forward(p, h.levels, options.policy));
  }

  const auto& keys = layout.keys();
  std::vector<std::vector<uint8_t>> blocks(keys.size());
  const auto n = static_cast<std::ptrdiff_t>(keys.size());
  const int threads = resolve_threads(options.policy);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ConcurrencyProbe::Scope probe;
    const BlockKey& key = keys[i];
    const CoefficientBlock block =
        extract_block(layout, pyramids[key.channel], key);
    blocks[i] = encode_block(block);
  }
  return write_container(h, blocks);
}

// ---------------------------------------------------------------------------
// Full decode

namespace {

void inverse_color(const ContainerHeader& h, std::vector<ChannelPlane>& planes) {
  if (h.color != ColorTransform::kRct) return;
  auto rgb = rct_inverse_planes(planes[0], planes[1], planes[2]);
  for (int c = 0; c < 3; ++c) planes[c] = std::move(rgb[c]);
}

void check_level(const ContainerHeader& h, int level) {
  if (level < 0 || level > h.levels) {
    throw Error(ErrorKind::kLevelRange,
                "level " + std::to_string(level) + " outside [0, " +
                    std::to_string(h.levels) + "]");
  }
}

}  // namespace

std::vector<ChannelPlane> decode_planes(const ContainerReader& reader,
                                        const DecodeOptions& options) {
  const ContainerHeader& h = reader.header();
  const ContainerLayout& layout = reader.layout();
  check_level(h, options.level);

  std::vector<SubbandPyramid> pyramids(h.channels);
  for (auto& pyr : pyramids) {
    const Extent top = layout.level_extent(h.levels);
    pyr.ll = ChannelPlane(top.width, top.height);
    pyr.details.resize(h.levels);
    for (int l = options.level + 1; l <= h.levels; ++l) {
      auto alloc = [&](std::size_t band) {
        const Extent e = layout.band_extent(l, band);
        return ChannelPlane(e.width, e.height);
      };
      pyr.details[l - 1] = {alloc(kBandLH), alloc(kBandHL), alloc(kBandHH)};
    }
  }

  std::vector<std::size_t> needed;
  for (std::size_t i = 0; i < layout.block_count(); ++i) {
    const BlockKey& k = layout.keys()[i];
    if (k.kind == BlockKind::kLowPass || k.level > options.level) {
      needed.push_back(i);
    }
  }
  const auto n = static_cast<std::ptrdiff_t>(needed.size());
  const int threads = resolve_threads(options.policy);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ConcurrencyProbe::Scope probe;
    const std::size_t idx = needed[i];
    const BlockKey& key = layout.keys()[idx];
    const CoefficientBlock block = reader.decode(idx, options.planes_dropped);
    // Blocks cover disjoint regions of the band planes.
    scatter_block(layout, block, key, pyramids[key.channel]);
  }

  std::vector<ChannelPlane> planes;
  for (const auto& pyr : pyramids) {
    planes.push_back(dwt2d_inverse_to_level(pyr, options.level, options.policy));
  }
  inverse_color(h, planes);
  return planes;
}

RasterImage decode_image(const ContainerReader& reader,
                         const DecodeOptions& options) {
  return from_planes(decode_planes(reader, options), reader.header().bit_depth);
}

RasterImage decode_image(std::span<const uint8_t> bytes,
                         const DecodeOptions& options) {
  return decode_image(ContainerReader({bytes.begin(), bytes.end()}), options);
}

// ---------------------------------------------------------------------------
// Region decode

namespace {

// Per level l (index l - 1): the LL_{l-1} rect it must produce and the
// supports that rect needs from level l.
struct RegionPlan {
  struct Step {
    Interval out_cols;
    Interval out_rows;
    SynthesisSupport sx;
    SynthesisSupport sy;
  };
  std::vector<Step> steps;  // index l - 1, only for l > level
  Interval top_cols;        // rect of LL_L
  Interval top_rows;
};

RegionPlan plan_region(const ContainerLayout& layout, const Rect& rect,
                       int level) {
  const ContainerHeader& h = layout.header();
  check_level(h, level);
  const Extent e = layout.level_extent(level);
  if (rect.width == 0 || rect.height == 0) {
    throw Error(ErrorKind::kDomain, "empty region");
  }
  if (static_cast<uint64_t>(rect.x) + rect.width > e.width ||
      static_cast<uint64_t>(rect.y) + rect.height > e.height) {
    throw Error(ErrorKind::kDomain, "region outside level " +
                                        std::to_string(level) + " extent");
  }
  RegionPlan plan;
  plan.steps.resize(h.levels);
  Interval cols{rect.x, rect.x + rect.width};
  Interval rows{rect.y, rect.y + rect.height};
  for (int l = level + 1; l <= h.levels; ++l) {
    const Extent parent = layout.level_extent(l - 1);
    RegionPlan::Step& s = plan.steps[l - 1];
    s.out_cols = cols;
    s.out_rows = rows;
    s.sx = synthesis_support(cols, parent.width);
    s.sy = synthesis_support(rows, parent.height);
    cols = s.sx.low;
    rows = s.sy.low;
  }
  plan.top_cols = cols;
  plan.top_rows = rows;
  return plan;
}

// Visits every (block index, band) whose tile intersects the window.
template <typename Fn>
void for_each_tile(const ContainerLayout& layout, uint32_t channel, int level,
                   BlockKind kind, Interval cols, Interval rows, Fn&& fn) {
  if (cols.empty() || rows.empty()) return;
  const uint32_t bd = layout.header().block_dim;
  for (std::size_t r = rows.begin / bd; r <= (rows.end - 1) / bd; ++r) {
    for (std::size_t c = cols.begin / bd; c <= (cols.end - 1) / bd; ++c) {
      const BlockKey key{channel, level, kind, static_cast<uint32_t>(r),
                         static_cast<uint32_t>(c)};
      fn(layout.block_index(key), key);
    }
  }
}

struct BandWindow {
  int level;
  BlockKind kind;
  std::size_t band;
  Interval cols;
  Interval rows;
};

std::vector<BandWindow> region_windows(const ContainerLayout& layout,
                                       const RegionPlan& plan, int level) {
  const int levels = layout.header().levels;
  std::vector<BandWindow> out;
  out.push_back({levels, BlockKind::kLowPass, 0, plan.top_cols, plan.top_rows});
  for (int l = level + 1; l <= levels; ++l) {
    const auto& s = plan.steps[l - 1];
    out.push_back({l, BlockKind::kHighPass, kBandHL, s.sx.high, s.sy.low});
    out.push_back({l, BlockKind::kHighPass, kBandLH, s.sx.low, s.sy.high});
    out.push_back({l, BlockKind::kHighPass, kBandHH, s.sx.high, s.sy.high});
  }
  return out;
}

std::set<std::size_t> region_blocks(const ContainerLayout& layout,
                                    const std::vector<BandWindow>& windows) {
  std::set<std::size_t> blocks;
  for (uint32_t c = 0; c < layout.header().channels; ++c) {
    for (const BandWindow& w : windows) {
      for_each_tile(layout, c, w.level, w.kind, w.cols, w.rows,
                    [&](std::size_t idx, const BlockKey&) { blocks.insert(idx); });
    }
  }
  return blocks;
}

}  // namespace

std::size_t region_block_count(const ContainerReader& reader, const Rect& rect,
                               int level) {
  const RegionPlan plan = plan_region(reader.layout(), rect, level);
  return region_blocks(reader.layout(),
                       region_windows(reader.layout(), plan, level))
      .size();
}

std::vector<ChannelPlane> decode_region_planes(const ContainerReader& reader,
                                               const Rect& rect,
                                               const DecodeOptions& options) {
  const ContainerLayout& layout = reader.layout();
  const ContainerHeader& h = reader.header();
  const RegionPlan plan = plan_region(layout, rect, options.level);
  const std::vector<BandWindow> windows =
      region_windows(layout, plan, options.level);
  const std::set<std::size_t> block_set = region_blocks(layout, windows);
  const std::vector<std::size_t> blocks(block_set.begin(), block_set.end());

  std::vector<std::optional<CoefficientBlock>> decoded(layout.block_count());
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
  const int threads = resolve_threads(options.policy);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ConcurrencyProbe::Scope probe;
    decoded[blocks[i]] = reader.decode(blocks[i], options.planes_dropped);
  }

  const uint32_t bd = h.block_dim;
  auto fetch = [&](uint32_t channel, const BandWindow& w) {
    PlaneWindow out{w.cols, w.rows, ChannelPlane(w.cols.size(), w.rows.size())};
    for_each_tile(layout, channel, w.level, w.kind, w.cols, w.rows,
                  [&](std::size_t idx, const BlockKey& key) {
                    const CoefficientBlock& b = *decoded[idx];
                    const std::size_t x0 = std::max<std::size_t>(w.cols.begin, key.col * bd);
                    const std::size_t x1 = std::min<std::size_t>(w.cols.end, (key.col + 1) * bd);
                    const std::size_t y0 = std::max<std::size_t>(w.rows.begin, key.row * bd);
                    const std::size_t y1 = std::min<std::size_t>(w.rows.end, (key.row + 1) * bd);
                    for (std::size_t y = y0; y < y1; ++y) {
                      for (std::size_t x = x0; x < x1; ++x) {
                        out.data.at(x - w.cols.begin, y - w.rows.begin) =
                            b.at(w.band, y - key.row * bd, x - key.col * bd);
                      }
                    }
                  });
    return out;
  };

  std::vector<ChannelPlane> planes;
  for (uint32_t c = 0; c < h.channels; ++c) {
    PlaneWindow cur = fetch(c, windows[0]);
    std::size_t wi = 1;
    std::vector<PlaneWindow> per_level(3 * h.levels);
    for (int l = options.level + 1; l <= h.levels; ++l) {
      for (int j = 0; j < 3; ++j) per_level[3 * (l - 1) + j] = fetch(c, windows[wi++]);
    }
    for (int l = h.levels; l > options.level; --l) {
      const auto& s = plan.steps[l - 1];
      const Extent parent = layout.level_extent(l - 1);
      ChannelPlane out = synthesize_window(
          cur, per_level[3 * (l - 1)], per_level[3 * (l - 1) + 1],
          per_level[3 * (l - 1) + 2], parent, s.out_cols, s.out_rows);
      cur = PlaneWindow{s.out_cols, s.out_rows, std::move(out)};
    }
    planes.push_back(std::move(cur.data));
  }
  inverse_color(h, planes);
  return planes;
}

RasterImage decode_region(const ContainerReader& reader, const Rect& rect,
                          const DecodeOptions& options) {
  return from_planes(decode_region_planes(reader, rect, options),
                     reader.header().bit_depth);
}

RasterImage decode_region(std::span<const uint8_t> bytes, const Rect& rect,
                          const DecodeOptions& options) {
  return decode_region(ContainerReader({bytes.begin(), bytes.end()}), rect,
                       options);
}

// ---------------------------------------------------------------------------
// Truncation and statistics

std::vector<uint8_t> truncate_stream(std::span<const uint8_t> bytes,
                                     unsigned planes_dropped,
                                     const ExecutionPolicy& policy) {
  const ContainerReader reader({bytes.begin(), bytes.end()});
  if (planes_dropped == 0) return {bytes.begin(), bytes.end()};
  const ContainerLayout& layout = reader.layout();
  std::vector<std::vector<uint8_t>> blocks(layout.block_count());
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
  const int threads = resolve_threads(policy);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ConcurrencyProbe::Scope probe;
    blocks[i] = truncate_block(reader.block_bytes(i),
                               layout.geometry(layout.keys()[i]),
                               planes_dropped);
  }
  return write_container(reader.header(), blocks);
}

ContainerStats container_stats(const ContainerReader& reader) {
  ContainerStats s;
  const ContainerLayout& layout = reader.layout();
  s.header_bytes = kHeaderBytes + layout.block_count() * kIndexEntryBytes;
  for (std::size_t i = 0; i < layout.block_count(); ++i) {
    const auto bytes = reader.block_bytes(i);
    const BlockHeader bh =
        parse_block_header(bytes, layout.geometry(layout.keys()[i]));
    ++s.depth_histogram[bh.depth];
    s.block_header_bits += bh.header_bits;
    s.payload_bits += bytes.size() * 8 - bh.header_bits;
    s.block_bytes += bytes.size();
  }
  return s;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::filesystem::path& path,
                std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

}  // namespace wbpc
