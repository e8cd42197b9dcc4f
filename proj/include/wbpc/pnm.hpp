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

#ifndef WBPC_PNM_HPP_
#define WBPC_PNM_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "wbpc/image.hpp"

namespace wbpc {

// Binary PGM (P5) / PPM (P6) with maxval up to 65535; samples above 255 are
// two bytes, big-endian. bit_depth is the bit width of maxval.
RasterImage read_pnm(std::span<const uint8_t> bytes);
RasterImage read_pnm_file(const std::filesystem::path& path);

// P5 for one channel, P6 for three; maxval = 2^bit_depth - 1.
std::vector<uint8_t> write_pnm(const RasterImage& img);
void write_pnm_file(const std::filesystem::path& path, const RasterImage& img);

}  // namespace wbpc

#endif  // WBPC_PNM_HPP_
