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

#ifndef WBPC_PNG_IO_HPP_
#define WBPC_PNG_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wbpc/image.hpp"

namespace wbpc {

// Gray or RGB, 8 or 16 bits per sample. Images of other depths are written
// at the next supported depth without rescaling.
std::vector<uint8_t> encode_png(const RasterImage& img, int compression = 6);

// Palette and low-depth gray are expanded; alpha is dropped.
RasterImage decode_png(std::span<const uint8_t> bytes);
RasterImage read_png_file(const std::filesystem::path& path);

}  // namespace wbpc

#endif  // WBPC_PNG_IO_HPP_
