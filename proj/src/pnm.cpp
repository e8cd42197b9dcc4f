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

#include "wbpc/pnm.hpp"

#include <bit>
#include <cctype>
#include <string>

#include "wbpc/container.hpp"
#include "wbpc/error.hpp"

namespace wbpc {
namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint32_t number() {
    skip_space_and_comments();
    uint64_t v = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 0xffffffffu) throw Error(ErrorKind::kParse, "header number too large");
      ++digits;
    }
    if (digits == 0) throw Error(ErrorKind::kParse, "expected a number in PNM header");
    return static_cast<uint32_t>(v);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorKind::kParse, "missing whitespace after maxval");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

RasterImage read_pnm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorKind::kParse, "not a binary PGM/PPM file");
  }
  const uint32_t channels = bytes[1] == '5' ? 1 : 3;
  HeaderScanner scan(bytes);
  const uint32_t width = scan.number();
  const uint32_t height = scan.number();
  const uint32_t maxval = scan.number();
  if (maxval < 1 || maxval > 65535) {
    throw Error(ErrorKind::kParse, "maxval outside [1, 65535]");
  }
  if (width < 1 || height < 1) throw Error(ErrorKind::kParse, "empty image");
  const std::size_t start = scan.raster_start();
  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - start < count * sample_bytes) {
    throw Error(ErrorKind::kParse, "raster data is truncated");
  }
  RasterImage img = RasterImage::create(
      width, height, channels, static_cast<uint32_t>(std::bit_width(maxval)));
  const uint8_t* p = bytes.data() + start;
  for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
    for (uint32_t c = 0; c < channels; ++c) {
      uint32_t v = *p++;
      if (sample_bytes == 2) v = (v << 8) | *p++;
      if (v > maxval) throw Error(ErrorKind::kParse, "sample exceeds maxval");
      img.samples[c * img.plane_size() + i] = static_cast<uint16_t>(v);
    }
  }
  return img;
}

RasterImage read_pnm_file(const std::filesystem::path& path) {
  return read_pnm(read_file(path));
}

std::vector<uint8_t> write_pnm(const RasterImage& img) {
  img.validate();
  if (img.channels != 1 && img.channels != 3) {
    throw Error(ErrorKind::kUnsupportedLayout,
                "PNM holds 1 or 3 channels, image has " +
                    std::to_string(img.channels));
  }
  const uint32_t maxval = img.max_value();
  const std::string header = std::string(img.channels == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(img.width) + " " +
                             std::to_string(img.height) + "\n" +
                             std::to_string(maxval) + "\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  const bool wide = maxval > 255;
  out.reserve(out.size() + img.samples.size() * (wide ? 2 : 1));
  for (std::size_t i = 0; i < img.plane_size(); ++i) {
    for (uint32_t c = 0; c < img.channels; ++c) {
      const uint16_t v = img.samples[c * img.plane_size() + i];
      if (wide) out.push_back(static_cast<uint8_t>(v >> 8));
      out.push_back(static_cast<uint8_t>(v));
    }
  }
  return out;
}

void write_pnm_file(const std::filesystem::path& path, const RasterImage& img) {
  write_file(path, write_pnm(img));
}

}  // namespace wbpc
