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

#include "wbpc/image.hpp"

#include <algorithm>
#include <string>

#include "wbpc/error.hpp"

namespace wbpc {

RasterImage RasterImage::create(uint32_t width, uint32_t height,
                                uint32_t channels, uint32_t bit_depth) {
  RasterImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.bit_depth = bit_depth;
  if (width < 1 || height < 1 || channels < 1 || channels > 4 ||
      bit_depth < 1 || bit_depth > 16) {
    throw Error(ErrorKind::kDomain,
                "invalid image geometry " + std::to_string(width) + "x" +
                    std::to_string(height) + "x" + std::to_string(channels) +
                    " @" + std::to_string(bit_depth) + " bits");
  }
  img.samples.assign(img.plane_size() * channels, 0);
  return img;
}

void RasterImage::validate() const {
  if (width < 1 || height < 1 || channels < 1 || channels > 4 ||
      bit_depth < 1 || bit_depth > 16) {
    throw Error(ErrorKind::kDomain, "invalid image geometry");
  }
  if (samples.size() != plane_size() * channels) {
    throw Error(ErrorKind::kDomain, "sample count does not match geometry");
  }
  const uint32_t limit = max_value();
  for (uint16_t s : samples) {
    if (s > limit) {
      throw Error(ErrorKind::kDomain, "sample exceeds bit depth");
    }
  }
}

ChannelPlane to_plane(const RasterImage& img, uint32_t c) {
  ChannelPlane plane(img.width, img.height);
  auto src = img.channel(c);
  std::copy(src.begin(), src.end(), plane.values.begin());
  return plane;
}

RasterImage from_planes(std::span<const ChannelPlane> planes,
                        uint32_t bit_depth) {
  if (planes.empty()) throw Error(ErrorKind::kShape, "no planes");
  const auto& first = planes.front();
  for (const auto& p : planes) {
    if (p.width != first.width || p.height != first.height) {
      throw Error(ErrorKind::kShape, "planes differ in size");
    }
  }
  RasterImage img = RasterImage::create(
      static_cast<uint32_t>(first.width), static_cast<uint32_t>(first.height),
      static_cast<uint32_t>(planes.size()), bit_depth);
  const int32_t hi = static_cast<int32_t>(img.max_value());
  for (uint32_t c = 0; c < img.channels; ++c) {
    auto dst = img.channel(c);
    const auto& src = planes[c].values;
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] = static_cast<uint16_t>(std::clamp(src[i], 0, hi));
    }
  }
  return img;
}

ChannelPlane crop(const ChannelPlane& plane, std::size_t x, std::size_t y,
                  std::size_t w, std::size_t h) {
  if (x + w > plane.width || y + h > plane.height) {
    throw Error(ErrorKind::kShape, "crop outside plane");
  }
  ChannelPlane out(w, h);
  for (std::size_t r = 0; r < h; ++r) {
    auto src = plane.row(y + r).subspan(x, w);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

RasterImage crop(const RasterImage& img, uint32_t x, uint32_t y, uint32_t w,
                 uint32_t h) {
  if (static_cast<uint64_t>(x) + w > img.width ||
      static_cast<uint64_t>(y) + h > img.height) {
    throw Error(ErrorKind::kShape, "crop outside image");
  }
  RasterImage out = RasterImage::create(w, h, img.channels, img.bit_depth);
  for (uint32_t c = 0; c < img.channels; ++c) {
    for (uint32_t r = 0; r < h; ++r) {
      for (uint32_t col = 0; col < w; ++col) {
        out.at(c, col, r) = img.at(c, x + col, y + r);
      }
    }
  }
  return out;
}

}  // namespace wbpc
