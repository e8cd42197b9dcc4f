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

#include <filesystem>
#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "wbpc/block_codec.hpp"
#include "wbpc/container.hpp"
#include "wbpc/error.hpp"
#include "wbpc/reference.hpp"
#include "wbpc/transforms.hpp"

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

// LL_k of every channel, via the serial reference transform.
std::vector<ChannelPlane> expected_level(const RasterImage& img, int k,
                                         bool rct) {
  std::vector<ChannelPlane> ch;
  if (rct) {
    auto ycc = rct_forward(img);
    for (auto& p : ycc) ch.push_back(reference::dwt2d_forward(p, k).ll);
    auto rgb = rct_inverse_planes(ch[0], ch[1], ch[2]);
    return {rgb.begin(), rgb.end()};
  }
  for (uint32_t c = 0; c < img.channels; ++c)
    ch.push_back(reference::dwt2d_forward(to_plane(img, c), k).ll);
  return ch;
}

}  // namespace

TEST_CASE("header and layout of a small container") {
  RasterImage img = RasterImage::create(1, 1, 1, 8);
  img.samples = {42};
  auto bytes = encode_image(img, {.levels = 0});
  ContainerReader r(bytes);
  CHECK(r.header().width == 1);
  CHECK(r.header().levels == 0);
  CHECK(r.layout().block_count() == 1);
  CHECK(r.layout().geometry(r.layout().keys()[0]).width == 4);
  CHECK(r.layout().geometry(r.layout().keys()[0]).height == 2);
  CHECK(std::equal(bytes.begin(), bytes.begin() + 4, "WBPC"));
  CHECK(bytes[4] == 1);
  CHECK(decode_image(bytes) == img);
}

TEST_CASE("block order and grids") {
  ContainerHeader h;
  h.width = 300;
  h.height = 200;
  h.channels = 2;
  h.bit_depth = 8;
  h.levels = 2;
  h.block_dim = 64;
  ContainerLayout l(h);
  // LL_2 is 75x50, level 2 bands up to 75x50, level 1 up to 150x100.
  CHECK(l.grid(2, BlockKind::kLowPass).cols == 2);
  CHECK(l.grid(2, BlockKind::kLowPass).rows == 1);
  CHECK(l.grid(1, BlockKind::kHighPass).cols == 3);
  CHECK(l.grid(1, BlockKind::kHighPass).rows == 2);
  const auto& keys = l.keys();
  CHECK(keys.size() == 2 * (2 + 2 + 6));
  CHECK(keys[0] == BlockKey{0, 2, BlockKind::kLowPass, 0, 0});
  CHECK(keys[1] == BlockKey{0, 2, BlockKind::kLowPass, 0, 1});
  CHECK(keys[2] == BlockKey{0, 2, BlockKind::kHighPass, 0, 0});
  CHECK(keys[4] == BlockKey{0, 1, BlockKind::kHighPass, 0, 0});
  CHECK(keys[10].channel == 1);
  for (std::size_t i = 0; i < keys.size(); ++i)
    CHECK(l.block_index(keys[i]) == i);
  // Edge tile of LL_2: 75 - 64 = 11 columns, padded to 12.
  auto g = l.geometry({0, 2, BlockKind::kLowPass, 0, 1});
  CHECK(g.width == 12);
  CHECK(g.height == 50);
  CHECK(l.tile_extent({0, 2, BlockKind::kLowPass, 0, 1}, 0) == Extent{11, 50});
}

TEST_CASE("constant image has header-only detail blocks") {
  RasterImage img = RasterImage::create(256, 256, 1, 8);
  std::fill(img.samples.begin(), img.samples.end(), 77);
  auto bytes = encode_image(img, {.levels = 3});
  ContainerReader r(bytes);
  for (std::size_t i = 0; i < r.layout().block_count(); ++i) {
    const auto& key = r.layout().keys()[i];
    if (key.kind != BlockKind::kHighPass) continue;
    auto hdr = parse_block_header(r.block_bytes(i), r.layout().geometry(key));
    for (auto m : hdr.masks) CHECK(m == 0);
    CHECK(hdr.seek.empty());
  }
  CHECK(decode_image(bytes) == img);
  auto region = decode_region(bytes, {100, 30, 20, 17});
  for (auto s : region.samples) CHECK(s == 77);
  // Truncation only touches metadata of blocks that have planes.
  CHECK(decode_image(truncate_stream(bytes, 3), {}) ==
        decode_image(bytes, {.planes_dropped = 3}));
}

TEST_CASE("lossless round trip corpus") {
  std::mt19937 rng(2024);
  const std::vector<std::pair<uint32_t, uint32_t>> dims{
      {1, 1}, {7, 5}, {127, 129}, {300, 200}, {1024, 1024}};
  int n = 0;
  for (auto [w, h] : dims) {
    for (uint32_t ch : {1u, 3u}) {
      for (uint32_t depth : {8u, 9u, 12u, 16u}) {
        const int levels = std::vector<int>{0, 1, 3, 5}[n % 4];
        const bool big = w == 1024;
        if (big && depth != 16 && depth != 8) continue;
        RasterImage img = (n % 2) ? test::natural_image(rng, w, h, ch, depth)
                                  : test::random_image(rng, w, h, ch, depth);
        const bool rct = ch == 3 && n % 3 != 0;
        auto bytes = encode_image(img, {.levels = levels, .rct = rct});
        CAPTURE(w);
        CAPTURE(h);
        CAPTURE(depth);
        REQUIRE(decode_image(bytes) == img);
        ++n;
      }
    }
  }
  CHECK(n >= 30);
}

TEST_CASE("rct needs three channels") {
  RasterImage img = RasterImage::create(8, 8, 1, 8);
  CHECK(kind_of([&] { encode_image(img, {.rct = true}); }) ==
        ErrorKind::kUnsupportedLayout);
}

TEST_CASE("resolution levels equal the forward transform low band") {
  std::mt19937 rng(6);
  for (int rep = 0; rep < 6; ++rep) {
    const uint32_t ch = rep % 2 ? 3 : 1;
    const bool rct = ch == 3 && rep % 4 == 1;
    auto img = test::natural_image(rng, 97 + rep * 13, 61 + rep * 7, ch,
                                   rep % 3 ? 8 : 12);
    auto bytes = encode_image(img, {.levels = 4, .rct = rct, .block_dim = 32});
    ContainerReader r(bytes);
    for (int k = 0; k <= 4; ++k) {
      auto got = decode_planes(r, {.level = k});
      REQUIRE(got == expected_level(img, k, rct));
    }
  }
  auto img = test::random_image(rng, 20, 20, 1, 8);
  auto bytes = encode_image(img, {.levels = 2});
  CHECK(kind_of([&] { decode_image(bytes, {.level = 3}); }) ==
        ErrorKind::kLevelRange);
}

TEST_CASE("regions equal crops of the full decode") {
  std::mt19937 rng(77);
  auto img = test::natural_image(rng, 150, 97, 3, 8);
  auto bytes = encode_image(img, {.levels = 3, .rct = true, .block_dim = 16});
  ContainerReader r(bytes);
  std::vector<std::vector<ChannelPlane>> full;
  for (int k = 0; k <= 3; ++k)
    for (unsigned q : {0u, 2u})
      full.push_back(decode_planes(r, {.level = k, .planes_dropped = q}));
  for (int rep = 0; rep < 100; ++rep) {
    const int k = rep % 4;
    const unsigned q = rep % 3 == 0 ? 2 : 0;
    const auto& ref = full[k * 2 + (q ? 1 : 0)];
    const auto W = static_cast<uint32_t>(ref[0].width);
    const auto H = static_cast<uint32_t>(ref[0].height);
    Rect rc;
    rc.x = rng() % W;
    rc.y = rng() % H;
    rc.width = 1 + rng() % (W - rc.x);
    rc.height = 1 + rng() % (H - rc.y);
    if (rep == 0) rc = {0, 0, W, H};
    auto got = decode_region_planes(r, rc, {.level = k, .planes_dropped = q});
    REQUIRE(got.size() == 3);
    for (int c = 0; c < 3; ++c)
      REQUIRE(got[c] == crop(ref[c], rc.x, rc.y, rc.width, rc.height));
  }
  CHECK(kind_of([&] { decode_region(r, {0, 0, 0, 5}); }) == ErrorKind::kDomain);
  CHECK(kind_of([&] { decode_region(r, {140, 0, 20, 5}); }) ==
        ErrorKind::kDomain);
}

TEST_CASE("a small region touches few blocks") {
  std::mt19937 rng(1);
  auto img = test::natural_image(rng, 1024, 1024, 1, 8);
  auto bytes = encode_image(img, {.levels = 5});
  ContainerReader r(bytes);
  const std::size_t touched = region_block_count(r, {500, 500, 16, 16}, 0);
  // At most 2x2 tiles per grid: one LL grid plus five high-pass grids.
  CHECK(touched <= 4 * 6);
  CHECK(touched < r.layout().block_count());
  auto got = decode_region(r, {500, 500, 16, 16});
  CHECK(got == crop(img, 500, 500, 16, 16));
}

TEST_CASE("truncated streams decode like quality-limited decodes") {
  std::mt19937 rng(3);
  auto img = test::natural_image(rng, 200, 150, 3, 8);
  auto bytes = encode_image(img, {.levels = 3, .rct = true, .block_dim = 64});
  CHECK(truncate_stream(bytes, 0) == bytes);
  double prev_psnr = -1;
  for (unsigned n = 8; n-- > 0;) {
    auto cut = truncate_stream(bytes, n);
    auto a = decode_image(cut);
    auto b = decode_image(bytes, {.planes_dropped = n});
    REQUIRE(a == b);
    if (n > 0) CHECK(cut.size() < bytes.size());
    const double p = test::psnr(img, a);
    CHECK(p >= prev_psnr);
    prev_psnr = p;
  }
  CHECK(decode_image(bytes, {.planes_dropped = 2}) !=
        decode_image(bytes, {.planes_dropped = 4}));
  CHECK(test::psnr(img, decode_image(bytes, {.planes_dropped = 2})) >
        test::psnr(img, decode_image(bytes, {.planes_dropped = 4})));
}

TEST_CASE("parallel encode and decode match serial") {
  std::mt19937 rng(10);
  auto img = test::natural_image(rng, 260, 190, 3, 12);
  EncodeOptions serial{.levels = 3, .rct = true, .block_dim = 32,
                       .policy = ExecutionPolicy::serial()};
  auto a = encode_image(img, serial);
  EncodeOptions par = serial;
  par.policy.threads = 4;
  auto b = encode_image(img, par);
  CHECK(a == b);
  CHECK(decode_image(a, {.policy = {4}}) == img);

  ConcurrencyProbe::reset();
  encode_image(img, serial);
  decode_image(a, {.policy = ExecutionPolicy::serial()});
  CHECK(ConcurrencyProbe::max_observed() == 1);
}

TEST_CASE("corrupt containers are rejected") {
  std::mt19937 rng(5);
  auto img = test::random_image(rng, 40, 30, 1, 8);
  auto bytes = encode_image(img, {.levels = 2, .block_dim = 16});
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(kind_of([&] { ContainerReader r(bad_magic); }) == ErrorKind::kParse);
  std::vector<uint8_t> short_file(bytes.begin(), bytes.begin() + 30);
  CHECK(kind_of([&] { ContainerReader r(short_file); }) != ErrorKind::kInternal);
  auto overlap = bytes;
  // Point the second block at the first one.
  std::copy(bytes.begin() + 24, bytes.begin() + 32, overlap.begin() + 36);
  CHECK(kind_of([&] { ContainerReader r(overlap); }) == ErrorKind::kCorruption);
  auto past_end = bytes;
  past_end[24 + 8] = 0xff;
  past_end[24 + 9] = 0xff;
  CHECK(kind_of([&] { ContainerReader r(past_end); }) == ErrorKind::kCorruption);
  CHECK(kind_of([] { ContainerReader::open("/nonexistent/x.wbpc"); }) ==
        ErrorKind::kIo);
}

TEST_CASE("stats") {
  std::mt19937 rng(5);
  auto img = test::natural_image(rng, 64, 64, 1, 8);
  auto bytes = encode_image(img, {.levels = 2, .block_dim = 32});
  ContainerReader r(bytes);
  auto st = container_stats(r);
  std::size_t blocks = 0;
  for (auto [d, n] : st.depth_histogram) blocks += n;
  CHECK(blocks == r.layout().block_count());
  CHECK(st.header_bytes == kHeaderBytes + kIndexEntryBytes * blocks);
  CHECK(st.header_bytes + st.block_bytes == bytes.size());
  CHECK((st.block_header_bits + st.payload_bits) == st.block_bytes * 8);
}
