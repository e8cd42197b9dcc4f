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

// Kernel timings: OpenMP paths against the serial reference.

#include <benchmark/benchmark.h>

#include <random>

#include "wbpc/bench.hpp"
#include "wbpc/bitplane.hpp"
#include "wbpc/block_codec.hpp"
#include "wbpc/container.hpp"
#include "wbpc/reference.hpp"
#include "wbpc/transforms.hpp"

namespace {

using namespace wbpc;

const ChannelPlane& test_plane() {
  static const ChannelPlane p = to_plane(synthetic_image(2048, 2048, 1, 8), 0);
  return p;
}

const CoefficientBlock& test_block() {
  static const CoefficientBlock b = [] {
    auto pyr = dwt2d_forward(test_plane(), 1, ExecutionPolicy::serial());
    auto blk = CoefficientBlock::zeros(128, 128, BlockKind::kHighPass);
    const ChannelPlane* bands[] = {&pyr.details[0].lh, &pyr.details[0].hl,
                                   &pyr.details[0].hh};
    for (std::size_t b = 0; b < 3; ++b)
      for (uint32_t y = 0; y < 128; ++y)
        for (uint32_t x = 0; x < 128; ++x) blk.at(b, y, x) = bands[b]->at(x, y);
    blk.depth = required_depth(blk);
    return blk;
  }();
  return b;
}

void set_pixels(benchmark::State& s, double pixels) {
  s.counters["MP/s"] = benchmark::Counter(pixels * 1e-6 * s.iterations(),
                                          benchmark::Counter::kIsRate);
}

void BM_DwtReference(benchmark::State& s) {
  for (auto _ : s)
    benchmark::DoNotOptimize(reference::dwt2d_forward(test_plane(), 5));
  set_pixels(s, 2048.0 * 2048);
}
BENCHMARK(BM_DwtReference)->Unit(benchmark::kMillisecond);

void BM_DwtParallel(benchmark::State& s) {
  const ExecutionPolicy pol{static_cast<int>(s.range(0))};
  for (auto _ : s) benchmark::DoNotOptimize(dwt2d_forward(test_plane(), 5, pol));
  set_pixels(s, 2048.0 * 2048);
}
BENCHMARK(BM_DwtParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_SerializeReference(benchmark::State& s) {
  for (auto _ : s)
    benchmark::DoNotOptimize(reference::serialize_block(test_block()));
  set_pixels(s, 3 * 128.0 * 128);
}
BENCHMARK(BM_SerializeReference);

void BM_Serialize(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(serialize_block(test_block()));
  set_pixels(s, 3 * 128.0 * 128);
}
BENCHMARK(BM_Serialize);

void BM_EncodeBlock(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(encode_block(test_block()));
  set_pixels(s, 3 * 128.0 * 128);
}
BENCHMARK(BM_EncodeBlock);

void BM_DecodeBlock(benchmark::State& s) {
  const auto bytes = encode_block(test_block());
  const BlockGeometry g{128, 128, BlockKind::kHighPass};
  for (auto _ : s) benchmark::DoNotOptimize(decode_block(bytes, g));
  set_pixels(s, 3 * 128.0 * 128);
}
BENCHMARK(BM_DecodeBlock);

void BM_EncodeImage(benchmark::State& s) {
  static const RasterImage img = synthetic_image(1024, 1024, 3, 8);
  const EncodeOptions o{.rct = true, .policy = {static_cast<int>(s.range(0))}};
  for (auto _ : s) benchmark::DoNotOptimize(encode_image(img, o));
  set_pixels(s, 1024.0 * 1024);
}
BENCHMARK(BM_EncodeImage)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
