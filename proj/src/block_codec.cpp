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

#include "wbpc/block_codec.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "wbpc/bitio.hpp"
#include "wbpc/error.hpp"

namespace wbpc {
namespace {

bool all_zero(std::span<const uint8_t> plane) {
  return std::all_of(plane.begin(), plane.end(),
                     [](uint8_t s) { return s == 0; });
}

void write_header(BitWriter& out, unsigned depth, unsigned counter_width,
                  uint8_t zr_symbol, std::span<const uint64_t> masks,
                  const HuffmanCode* code, unsigned seek_bits,
                  std::span<const std::size_t> seek) {
  out.write(depth, kDepthBits);
  out.write(counter_width, kCounterWidthBits);
  out.write(zr_symbol, kZeroRunSymbolBits);
  for (uint64_t mask : masks) {
    for (unsigned b = 0; b < depth; ++b) out.write((mask >> b) & 1, 1);
  }
  if (code != nullptr) serialize_tree(*code, out);
  out.write(static_cast<uint32_t>(seek.size()), kSeekCountBits);
  for (std::size_t offset : seek) {
    if (seek_bits < 64 && (offset >> seek_bits) != 0) {
      throw Error(ErrorKind::kInternal,
                  "seek offset " + std::to_string(offset) + " exceeds " +
                      std::to_string(seek_bits) + " bits");
    }
    out.write(static_cast<uint32_t>(offset), seek_bits);
  }
}

}  // namespace

unsigned seek_entry_bits(std::size_t plane_slots, uint32_t width,
                         uint32_t height) {
  const uint64_t areas =
      static_cast<uint64_t>(plane_slots) * width * height / 8;
  if (areas == 0) throw Error(ErrorKind::kShape, "empty block");
  return static_cast<unsigned>(std::bit_width(areas) - 1) + 5;
}

std::vector<uint8_t> encode_block(const CoefficientBlock& block) {
  const SymbolStream all = serialize_block(block);
  const std::size_t bands = block.bands.size();
  const unsigned d = block.depth;

  std::vector<uint64_t> masks(bands, 0);
  SymbolStream stored;
  for (std::size_t slot = 0; slot < all.plane_count(); ++slot) {
    const auto plane = all.plane(slot);
    if (all_zero(plane)) continue;
    masks[slot % bands] |= uint64_t{1} << (slot / bands);
    stored.plane_boundaries.push_back(stored.symbols.size());
    stored.symbols.insert(stored.symbols.end(), plane.begin(), plane.end());
  }

  const unsigned t = seek_entry_bits(d * bands, block.width, block.height);
  BitWriter out;
  if (stored.plane_count() == 0) {
    write_header(out, d, kMinCounterWidth, 0, masks, nullptr, t, {});
    return std::move(out).finish();
  }

  const StreamCoding coding = plan_stream(stored);
  BitWriter payload;
  const std::vector<std::size_t> seek =
      encode_stream(stored, coding.plan.zr_symbol, coding.plan.counter_width,
                    coding.code, payload);
  const std::size_t payload_bits = payload.position();
  const std::vector<uint8_t> payload_bytes = std::move(payload).finish();

  write_header(out, d, coding.plan.counter_width, coding.plan.zr_symbol,
               masks, &coding.code, t, seek);
  copy_bits(payload_bytes, 0, payload_bits, out);
  return std::move(out).finish();
}

BlockHeader parse_block_header(std::span<const uint8_t> bytes,
                               const BlockGeometry& geometry) {
  BlockHeader h;
  const std::size_t bands = band_count(geometry.kind);
  BitReader in(bytes);
  try {
    h.depth = in.read(kDepthBits);
    h.counter_width = in.read(kCounterWidthBits);
    h.zr_symbol = static_cast<uint8_t>(in.read(kZeroRunSymbolBits));
    if (h.depth == 0) throw Error(ErrorKind::kParse, "block depth is 0");
    if (h.counter_width < kMinCounterWidth ||
        h.counter_width > kMaxCounterWidth) {
      throw Error(ErrorKind::kParse, "counter width " +
                                         std::to_string(h.counter_width) +
                                         " out of range");
    }
    h.masks.assign(bands, 0);
    for (std::size_t band = 0; band < bands; ++band) {
      for (unsigned b = 0; b < h.depth; ++b) {
        if (in.read_bit()) h.masks[band] |= uint64_t{1} << b;
      }
    }
    for (unsigned b = 0; b < h.depth; ++b) {
      for (std::size_t band = 0; band < bands; ++band) {
        if ((h.masks[band] >> b) & 1) h.stored_slots.push_back(b * bands + band);
      }
    }
    h.has_tree = !h.stored_slots.empty();
    if (h.has_tree) h.code = parse_tree(in);
    const std::size_t count = in.read(kSeekCountBits);
    if (count != h.stored_slots.size()) {
      throw Error(ErrorKind::kCorruption,
                  "seek table has " + std::to_string(count) +
                      " entries for " +
                      std::to_string(h.stored_slots.size()) + " stored planes");
    }
    h.seek_bits = seek_entry_bits(h.depth * bands, geometry.width,
                                  geometry.height);
    h.seek.resize(count);
    // A one-leaf code writes zero bits per symbol, so every plane starts at
    // offset 0. Otherwise each plane takes at least one bit.
    const bool empty_code = h.has_tree && h.code.max_length() == 0;
    for (std::size_t i = 0; i < count; ++i) {
      h.seek[i] = in.read(h.seek_bits);
      const bool ok = i == 0 ? h.seek[i] == 0
                    : empty_code ? h.seek[i] == 0
                                 : h.seek[i] > h.seek[i - 1];
      if (!ok) {
        throw Error(ErrorKind::kCorruption, "seek table is not increasing");
      }
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kTruncated ||
        e.kind() == ErrorKind::kMalformedTree ||
        e.kind() == ErrorKind::kCodeTooLong) {
      throw Error(ErrorKind::kParse, std::string("block header: ") + e.what());
    }
    throw;
  }
  h.header_bits = in.position();
  if (!h.seek.empty() && h.header_bits + h.seek.back() > in.limit()) {
    throw Error(ErrorKind::kCorruption, "seek entry beyond block end");
  }
  return h;
}

CoefficientBlock decode_block(std::span<const uint8_t> bytes,
                              const BlockGeometry& geometry,
                              unsigned keep_planes) {
  const BlockHeader h = parse_block_header(bytes, geometry);
  const std::size_t bands = h.bands();
  const std::size_t per_plane = areas_per_plane(geometry.width, geometry.height);
  const unsigned keep = std::min(keep_planes, h.depth);

  SymbolStream stream;
  stream.symbols.assign(h.depth * bands * per_plane, 0);
  for (std::size_t slot = 0; slot < h.depth * bands; ++slot) {
    stream.plane_boundaries.push_back(slot * per_plane);
  }

  BitReader in(bytes);
  in.seek(h.header_bits);
  for (std::size_t i = 0; i < h.stored_slots.size(); ++i) {
    const std::size_t slot = h.stored_slots[i];
    if (slot / bands >= keep) break;
    if (in.position() - h.header_bits != h.seek[i]) {
      throw Error(ErrorKind::kCorruption,
                  "plane " + std::to_string(i) + " starts at bit " +
                      std::to_string(in.position() - h.header_bits) +
                      ", seek table says " + std::to_string(h.seek[i]));
    }
    decode_plane(in, h.code, h.zr_symbol, h.counter_width,
                 std::span<uint8_t>(stream.symbols)
                     .subspan(slot * per_plane, per_plane));
  }
  return deserialize_block(stream, geometry.width, geometry.height,
                           geometry.kind, h.depth);
}

std::vector<PlaneOffset> plane_offsets(std::span<const uint8_t> bytes,
                                       const BlockGeometry& geometry) {
  const BlockHeader h = parse_block_header(bytes, geometry);
  std::vector<PlaneOffset> out;
  for (std::size_t i = 0; i < h.stored_slots.size(); ++i) {
    const std::size_t slot = h.stored_slots[i];
    out.push_back({slot % h.bands(), static_cast<unsigned>(slot / h.bands()),
                   h.seek[i]});
  }
  return out;
}

std::vector<uint8_t> decode_stored_plane(std::span<const uint8_t> bytes,
                                         const BlockGeometry& geometry,
                                         std::size_t index) {
  const BlockHeader h = parse_block_header(bytes, geometry);
  if (index >= h.stored_slots.size()) {
    throw Error(ErrorKind::kIndex, "no stored plane " + std::to_string(index));
  }
  std::vector<uint8_t> out(areas_per_plane(geometry.width, geometry.height));
  BitReader in(bytes);
  in.seek(h.header_bits + h.seek[index]);
  decode_plane(in, h.code, h.zr_symbol, h.counter_width, out);
  return out;
}

std::vector<uint8_t> truncate_block(std::span<const uint8_t> bytes,
                                    const BlockGeometry& geometry,
                                    unsigned planes_dropped) {
  if (planes_dropped == 0) return {bytes.begin(), bytes.end()};
  const BlockHeader h = parse_block_header(bytes, geometry);
  const std::size_t bands = h.bands();
  const unsigned keep = h.depth > planes_dropped ? h.depth - planes_dropped : 0;

  std::size_t retained = 0;
  while (retained < h.stored_slots.size() &&
         h.stored_slots[retained] / bands < keep) {
    ++retained;
  }
  if (retained == h.stored_slots.size()) return {bytes.begin(), bytes.end()};

  std::vector<uint64_t> masks = h.masks;
  const uint64_t keep_mask =
      keep >= 64 ? ~uint64_t{0} : (uint64_t{1} << keep) - 1;
  for (uint64_t& m : masks) m &= keep_mask;

  BitWriter out;
  write_header(out, h.depth, h.counter_width, h.zr_symbol, masks,
               retained > 0 ? &h.code : nullptr, h.seek_bits,
               std::span<const std::size_t>(h.seek).first(retained));
  copy_bits(bytes, h.header_bits, h.header_bits + h.seek[retained], out);
  return std::move(out).finish();
}

}  // namespace wbpc
