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

#include "wbpc/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>

#include "wbpc/container.hpp"
#include "wbpc/error.hpp"

namespace wbpc {
namespace {

[[noreturn]] void on_error(png_structp, png_const_charp msg) {
  throw Error(ErrorKind::kParse, std::string("png: ") + msg);
}

void on_warning(png_structp, png_const_charp) {}

struct Source {
  std::span<const uint8_t> bytes;
  std::size_t pos = 0;
};

void read_cb(png_structp png, png_bytep out, png_size_t n) {
  auto* src = static_cast<Source*>(png_get_io_ptr(png));
  if (src->pos + n > src->bytes.size()) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, src->bytes.data() + src->pos, n);
  src->pos += n;
}

void write_cb(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + n);
}

void flush_cb(png_structp) {}

}  // namespace

std::vector<uint8_t> encode_png(const RasterImage& img, int compression) {
  img.validate();
  if (img.channels != 1 && img.channels != 3) {
    throw Error(ErrorKind::kUnsupportedLayout,
                "png output needs 1 or 3 channels");
  }
  const int depth = img.bit_depth <= 8 ? 8 : 16;
  const std::size_t bps = depth / 8;
  std::vector<uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            on_error, on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorKind::kInternal, "png: out of memory");
  }
  try {
    png_set_write_fn(png, &out, write_cb, flush_cb);
    png_set_compression_level(png, compression);
    png_set_IHDR(png, info, img.width, img.height, depth,
                 img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<uint8_t> row(static_cast<std::size_t>(img.width) *
                             img.channels * bps);
    for (uint32_t y = 0; y < img.height; ++y) {
      std::size_t i = 0;
      for (uint32_t x = 0; x < img.width; ++x) {
        for (uint32_t c = 0; c < img.channels; ++c) {
          const uint16_t v = img.at(c, x, y);
          if (bps == 2) row[i++] = static_cast<uint8_t>(v >> 8);
          row[i++] = static_cast<uint8_t>(v);
        }
      }
      png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
  return out;
}

RasterImage decode_png(std::span<const uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorKind::kParse, "not a png file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           on_error, on_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorKind::kInternal, "png: out of memory");
  }
  Source src{bytes, 0};
  RasterImage img;
  try {
    png_set_read_fn(png, &src, read_cb);
    png_read_info(png, info);
    const int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
    }
    png_set_strip_alpha(png);
    png_read_update_info(png, info);
    depth = png_get_bit_depth(png, info);
    const uint32_t channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
      throw Error(ErrorKind::kUnsupportedLayout, "png: unsupported layout");
    }
    const uint32_t w = png_get_image_width(png, info);
    const uint32_t h = png_get_image_height(png, info);
    img = RasterImage::create(w, h, channels, depth);
    const std::size_t bps = depth / 8;
    std::vector<uint8_t> row(png_get_rowbytes(png, info));
    for (uint32_t y = 0; y < h; ++y) {
      png_read_row(png, row.data(), nullptr);
      std::size_t i = 0;
      for (uint32_t x = 0; x < w; ++x) {
        for (uint32_t c = 0; c < channels; ++c) {
          uint16_t v = row[i++];
          if (bps == 2) v = static_cast<uint16_t>(v << 8 | row[i++]);
          img.at(c, x, y) = v;
        }
      }
    }
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

RasterImage read_png_file(const std::filesystem::path& path) {
  return decode_png(read_file(path));
}

}  // namespace wbpc
