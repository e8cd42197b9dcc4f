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

#ifndef WBPC_IMAGE_HPP_
#define WBPC_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wbpc {

// A grid of signed samples: color-transform output or wavelet coefficients.
// Zero-sized planes are legal (empty detail bands of tiny images).
struct ChannelPlane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<int32_t> values;

  ChannelPlane() = default;
  ChannelPlane(std::size_t w, std::size_t h, int32_t fill = 0)
      : width(w), height(h), values(w * h, fill) {}

  int32_t& at(std::size_t x, std::size_t y) { return values[y * width + x]; }
  int32_t at(std::size_t x, std::size_t y) const {
    return values[y * width + x];
  }
  std::span<int32_t> row(std::size_t y) {
    return {values.data() + y * width, width};
  }
  std::span<const int32_t> row(std::size_t y) const {
    return {values.data() + y * width, width};
  }
  bool empty() const { return width == 0 || height == 0; }

  bool operator==(const ChannelPlane&) const = default;
};

// Channel-planar unsigned samples, 1..4 channels of 1..16 bits.
struct RasterImage {
  uint32_t width = 0;
  uint32_t height = 0;
  uint32_t channels = 0;
  uint32_t bit_depth = 0;
  std::vector<uint16_t> samples;

  // Zero-filled image; throws kDomain on out-of-range geometry.
  static RasterImage create(uint32_t width, uint32_t height, uint32_t channels,
                            uint32_t bit_depth);

  std::size_t plane_size() const {
    return static_cast<std::size_t>(width) * height;
  }
  std::span<uint16_t> channel(uint32_t c) {
    return {samples.data() + c * plane_size(), plane_size()};
  }
  std::span<const uint16_t> channel(uint32_t c) const {
    return {samples.data() + c * plane_size(), plane_size()};
  }
  uint16_t& at(uint32_t c, uint32_t x, uint32_t y) {
    return samples[c * plane_size() + static_cast<std::size_t>(y) * width + x];
  }
  uint16_t at(uint32_t c, uint32_t x, uint32_t y) const {
    return samples[c * plane_size() + static_cast<std::size_t>(y) * width + x];
  }
  uint32_t max_value() const { return (1u << bit_depth) - 1u; }

  // Throws kDomain if geometry, sample count or sample range is invalid.
  void validate() const;

  bool operator==(const RasterImage&) const = default;
};

// Plane of channel c as signed values.
ChannelPlane to_plane(const RasterImage& img, uint32_t c);

// Clamps each value into [0, 2^bit_depth - 1].
RasterImage from_planes(std::span<const ChannelPlane> planes,
                        uint32_t bit_depth);

// Sub-rectangle copy; the rect must lie inside the plane.
ChannelPlane crop(const ChannelPlane& plane, std::size_t x, std::size_t y,
                  std::size_t w, std::size_t h);
RasterImage crop(const RasterImage& img, uint32_t x, uint32_t y, uint32_t w,
                 uint32_t h);

}  // namespace wbpc

#endif  // WBPC_IMAGE_HPP_
