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

#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "wbpc/bitio.hpp"
#include "wbpc/block_codec.hpp"
#include "wbpc/error.hpp"

using namespace wbpc;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

BlockGeometry geom_of(const CoefficientBlock& b) {
  return {b.width, b.height, b.kind};
}

// Keeps plane order indices below keep, by masking magnitudes directly.
CoefficientBlock drop_planes(CoefficientBlock b, unsigned keep) {
  if (keep >= b.depth) return b;
  for (auto& band : b.bands) {
    for (auto& v : band) {
      if (keep == 0) {
        v = 0;
        continue;
      }
      const unsigned kept_mag = keep - 1;
      const unsigned shift = b.depth - 1 - kept_mag;
      const int32_t mag = (std::abs(v) >> shift) << shift;
      v = v < 0 ? -mag : mag;
    }
  }
  return b;
}

}  // namespace

TEST_CASE("seek entry width") {
  CHECK(seek_entry_bits(16, 128, 128) == 20);
  CHECK(seek_entry_bits(24, 128, 128) == 20);
  CHECK(seek_entry_bits(1, 4, 2) == 5);
  CHECK(seek_entry_bits(3, 12, 6) == 9);
}

TEST_CASE("all-zero block is header only") {
  auto z = CoefficientBlock::zeros(8, 8, BlockKind::kLowPass, 1);
  auto bytes = encode_block(z);
  // d(6) cw(5) zr(8) mask(1) count(16) = 36 bits.
  CHECK(bytes.size() == 5);
  auto h = parse_block_header(bytes, geom_of(z));
  CHECK(h.depth == 1);
  CHECK(h.masks == std::vector<uint64_t>{0});
  CHECK_FALSE(h.has_tree);
  CHECK(h.seek.empty());
  CHECK(h.header_bits == 36);
  CHECK(decode_block(bytes, geom_of(z)) == z);
  CHECK(plane_offsets(bytes, geom_of(z)).empty());
}

TEST_CASE("dropping the least significant plane of +5") {
  auto b = CoefficientBlock::zeros(4, 2, BlockKind::kLowPass, 4);
  b.at(0, 0, 0) = 5;
  auto bytes = encode_block(b);
  auto g = geom_of(b);
  CHECK(decode_block(bytes, g) == b);
  CHECK(decode_block(bytes, g, 4) == b);
  CHECK(decode_block(bytes, g, 3).at(0, 0, 0) == 4);
  CHECK(decode_block(bytes, g, 0) ==
        CoefficientBlock::zeros(4, 2, BlockKind::kLowPass, 4));
  auto cut = truncate_block(bytes, g, 1);
  CHECK(decode_block(cut, g).at(0, 0, 0) == 4);
  CHECK(cut.size() <= bytes.size());
}

TEST_CASE("plane offsets") {
  // Single stored plane.
  auto one = CoefficientBlock::zeros(8, 4, BlockKind::kLowPass, 2);
  one.at(0, 1, 1) = 1;
  one.at(0, 3, 6) = 1;
  auto bytes = encode_block(one);
  CHECK(plane_offsets(bytes, geom_of(one)) ==
        std::vector<PlaneOffset>{{0, 1, 0}});

  // Two stored planes: the second starts where the first one's bits end.
  auto two = CoefficientBlock::zeros(8, 4, BlockKind::kLowPass, 2);
  two.at(0, 0, 0) = -1;
  two.at(0, 2, 5) = 1;
  two.at(0, 3, 7) = -1;
  bytes = encode_block(two);
  auto g = geom_of(two);
  auto h = parse_block_header(bytes, g);
  auto stream = serialize_block(two);
  SymbolStream sign;
  sign.symbols.assign(stream.plane(0).begin(), stream.plane(0).end());
  sign.plane_boundaries = {0};
  BitWriter w;
  encode_stream(sign, h.zr_symbol, h.counter_width, h.code, w);
  const std::size_t plane_a_bits = w.position();
  CHECK(plane_offsets(bytes, g) ==
        std::vector<PlaneOffset>{{0, 0, 0}, {0, 1, plane_a_bits}});
  for (std::size_t i = 0; i < 2; ++i) {
    auto syms = decode_stored_plane(bytes, g, i);
    CHECK(std::equal(syms.begin(), syms.end(), stream.plane(i).begin()));
  }
}

TEST_CASE("round trip, seek consistency and mask completeness") {
  std::mt19937 rng(12);
  const std::vector<std::pair<uint32_t, uint32_t>> dims{
      {8, 8}, {12, 6}, {128, 128}};
  for (auto [w, h] : dims) {
    for (BlockKind kind : {BlockKind::kLowPass, BlockKind::kHighPass}) {
      for (unsigned d = 2; d <= 16; ++d) {
        auto blk = test::random_block(rng, w, h, kind, d, 0.7);
        blk.depth = std::max(required_depth(blk), 1u);
        if (blk.depth != d) continue;
        auto bytes = encode_block(blk);
        auto g = geom_of(blk);
        REQUIRE(decode_block(bytes, g) == blk);
        REQUIRE(encode_block(blk) == bytes);

        auto hdr = parse_block_header(bytes, g);
        const auto stream = serialize_block(blk);
        const std::size_t bands = band_count(kind);
        for (std::size_t band = 0; band < bands; ++band) {
          for (unsigned p = 0; p < d; ++p) {
            const auto syms = stream.plane(p * bands + band);
            const bool nonzero = std::any_of(syms.begin(), syms.end(),
                                             [](uint8_t v) { return v; });
            REQUIRE(((hdr.masks[band] >> p) & 1) == (nonzero ? 1u : 0u));
          }
        }
        for (std::size_t i = 0; i < hdr.stored_slots.size(); ++i) {
          auto syms = decode_stored_plane(bytes, g, i);
          const auto want = stream.plane(hdr.stored_slots[i]);
          REQUIRE(std::equal(syms.begin(), syms.end(), want.begin(),
                             want.end()));
        }
      }
    }
  }
}

TEST_CASE("quality truncation is monotone and matches direct decode") {
  std::mt19937 rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const BlockKind kind = rep % 2 ? BlockKind::kHighPass : BlockKind::kLowPass;
    auto blk = test::random_block(rng, 16, 8, kind, 2 + rng() % 12, 0.4);
    blk.depth = required_depth(blk);
    auto bytes = encode_block(blk);
    auto g = geom_of(blk);
    std::vector<int64_t> prev_err;
    for (unsigned q = 0; q <= blk.depth; ++q) {
      auto dec = decode_block(bytes, g, q);
      REQUIRE(dec == drop_planes(blk, q));
      REQUIRE(decode_block(truncate_block(bytes, g, blk.depth - q), g) == dec);
      std::vector<int64_t> err;
      for (std::size_t b = 0; b < blk.bands.size(); ++b)
        for (std::size_t i = 0; i < blk.bands[b].size(); ++i)
          err.push_back(std::abs(int64_t{blk.bands[b][i]} - dec.bands[b][i]));
      if (!prev_err.empty())
        for (std::size_t i = 0; i < err.size(); ++i)
          REQUIRE(err[i] <= prev_err[i]);
      prev_err = err;
    }
    REQUIRE(truncate_block(bytes, g, 0) == bytes);
  }
}

TEST_CASE("malformed blocks are rejected") {
  auto blk = CoefficientBlock::zeros(8, 8, BlockKind::kLowPass, 4);
  blk.at(0, 3, 3) = 7;
  blk.at(0, 5, 2) = -3;
  auto bytes = encode_block(blk);
  auto g = geom_of(blk);

  std::vector<uint8_t> zero_depth = bytes;
  zero_depth[0] &= 0x03;  // d = 0
  CHECK(kind_of([&] { parse_block_header(zero_depth, g); }) ==
        ErrorKind::kParse);

  std::vector<uint8_t> cut(bytes.begin(), bytes.begin() + 3);
  CHECK(kind_of([&] { decode_block(cut, g); }) == ErrorKind::kParse);

  CHECK(kind_of([&] { parse_block_header({}, g); }) == ErrorKind::kParse);

  // Shift one seek entry: the plane no longer starts where it says.
  auto hdr = parse_block_header(bytes, g);
  REQUIRE(hdr.seek.size() >= 2);
  const std::size_t entry_pos = hdr.header_bits -
                                (hdr.seek.size() - 1) * hdr.seek_bits;
  std::vector<uint8_t> bad = bytes;
  const std::size_t lsb = entry_pos + hdr.seek_bits - 1;
  bad[lsb / 8] ^= static_cast<uint8_t>(0x80 >> (lsb % 8));
  const auto k = kind_of([&] { decode_block(bad, g); });
  CHECK((k == ErrorKind::kCorruption || k == ErrorKind::kMalformedPayload ||
         k == ErrorKind::kTruncated));
}
