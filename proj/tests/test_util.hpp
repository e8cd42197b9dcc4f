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

#ifndef WBPC_TESTS_TEST_UTIL_HPP_
#define WBPC_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wbpc/bitplane.hpp"
#include "wbpc/image.hpp"

namespace wbpc::test {

inline ChannelPlane random_plane(std::mt19937& rng, std::size_t w,
                                 std::size_t h, int32_t lo, int32_t hi) {
  std::uniform_int_distribution<int32_t> dist(lo, hi);
  ChannelPlane p(w, h);
  for (auto& v : p.values) v = dist(rng);
  return p;
}

inline RasterImage random_image(std::mt19937& rng, uint32_t w, uint32_t h,
                                uint32_t channels, uint32_t bit_depth) {
  RasterImage img = RasterImage::create(w, h, channels, bit_depth);
  std::uniform_int_distribution<uint32_t> dist(0, img.max_value());
  for (auto& s : img.samples) s = static_cast<uint16_t>(dist(rng));
  return img;
}

// Smooth field with texture: sum of a few random sinusoids plus mild noise.
inline RasterImage natural_image(std::mt19937& rng, uint32_t w, uint32_t h,
                                 uint32_t channels, uint32_t bit_depth) {
  RasterImage img = RasterImage::create(w, h, channels, bit_depth);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.5);
  const double peak = img.max_value();
  for (uint32_t c = 0; c < channels; ++c) {
    double fx[4], fy[4], ph[4], amp[4];
    for (int i = 0; i < 4; ++i) {
      fx[i] = u(rng) * 0.08 / (i + 1);
      fy[i] = u(rng) * 0.08 / (i + 1);
      ph[i] = u(rng) * 6.28;
      amp[i] = 0.5 / (i + 1);
    }
    for (uint32_t y = 0; y < h; ++y) {
      for (uint32_t x = 0; x < w; ++x) {
        double v = 0.5;
        for (int i = 0; i < 4; ++i) {
          v += amp[i] * 0.5 * std::sin(fx[i] * x + fy[i] * y + ph[i]);
        }
        v = v * 0.9 * peak + noise(rng) * peak / 255.0;
        img.at(c, x, y) =
            static_cast<uint16_t>(std::clamp(std::lround(v), 0L,
                                             static_cast<long>(peak)));
      }
    }
  }
  return img;
}

inline CoefficientBlock random_block(std::mt19937& rng, uint32_t w, uint32_t h,
                                     BlockKind kind, unsigned depth,
                                     double zero_fraction = 0.5) {
  CoefficientBlock b = CoefficientBlock::zeros(w, h, kind, depth);
  const int64_t limit = (int64_t{1} << (depth - 1)) - 1;
  std::uniform_int_distribution<int64_t> mag(-limit, limit);
  std::bernoulli_distribution zero(zero_fraction);
  // Magnitudes biased towards small values, like wavelet detail.
  std::geometric_distribution<int> small(0.3);
  for (auto& band : b.bands) {
    for (auto& v : band) {
      if (zero(rng)) continue;
      int64_t m = std::min<int64_t>(small(rng), limit);
      if (rng() % 8 == 0) m = std::llabs(mag(rng));
      v = static_cast<int32_t>(rng() % 2 ? m : -m);
    }
  }
  return b;
}

inline double psnr(const RasterImage& a, const RasterImage& b) {
  double se = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - b.samples[i];
    se += d * d;
  }
  if (se == 0) return INFINITY;
  const double mse = se / a.samples.size();
  const double peak = a.max_value();
  return 10.0 * std::log10(peak * peak / mse);
}

// Bytes of the first ```hexdump fenced block of a markdown file.
inline std::vector<uint8_t> hexdump_from_markdown(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::vector<uint8_t> out;
  bool inside = false;
  while (std::getline(in, line)) {
    if (!inside) {
      inside = line.rfind("```hexdump", 0) == 0;
      continue;
    }
    if (line.rfind("```", 0) == 0) break;
    std::istringstream ls(line);
    std::string word;
    ls >> word;  // offset
    const std::size_t expected_offset = std::stoul(word, nullptr, 16);
    if (expected_offset != out.size()) return {};
    while (ls >> word) out.push_back(static_cast<uint8_t>(std::stoul(word, nullptr, 16)));
  }
  return out;
}

}  // namespace wbpc::test

#endif  // WBPC_TESTS_TEST_UTIL_HPP_
