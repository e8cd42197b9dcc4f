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

#ifndef WBPC_BENCH_HPP_
#define WBPC_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wbpc/image.hpp"

namespace wbpc {

struct BenchOptions {
  int threads = 1;
  int levels = -1;
  bool rct = true;  // for 3-channel inputs
  uint32_t block_dim = 128;
  int repeats = 1;  // best-of timing
};

struct BenchRow {
  std::string name;
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 0;
  uint32_t bit_depth = 0;
  std::size_t raw_bytes = 0;  // channels * pixels * ceil(B/8)
  std::size_t encoded_bytes = 0;
  std::optional<std::size_t> baseline_bytes;  // PNG
  double encode_seconds = 0;
  double decode_seconds = 0;
  bool lossless = false;

  uint64_t pixels() const { return uint64_t{width} * height; }
  double encode_mps() const;
  double decode_mps() const;
  std::optional<double> ratio() const;  // encoded / baseline
};

struct BenchReport {
  int threads = 1;
  int max_concurrent_blocks = 0;
  std::vector<BenchRow> rows;
  std::vector<std::string> warnings;

  // Sum of encoded over sum of baseline, rows with a baseline only.
  std::optional<double> aggregate_ratio() const;
  double aggregate_encode_mps() const;
  double aggregate_decode_mps() const;

  std::string to_json() const;
  std::string to_text() const;
};

BenchRow bench_image(const std::string& name, const RasterImage& img,
                     std::optional<std::size_t> baseline_bytes,
                     const BenchOptions& options);

// Inputs are files or directories. PGM/PPM inputs take a sibling .png of the
// same stem as baseline; PNG inputs are their own baseline.
BenchReport run_bench(const std::vector<std::filesystem::path>& inputs,
                      const BenchOptions& options);

// Deterministic smooth gradient with texture and mild noise.
RasterImage synthetic_image(uint32_t width, uint32_t height,
                            uint32_t channels, uint32_t bit_depth,
                            uint64_t seed = 1);

}  // namespace wbpc

#endif  // WBPC_BENCH_HPP_
