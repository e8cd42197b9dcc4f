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

#include "wbpc/bitplane.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#include "wbpc/error.hpp"

namespace wbpc {
namespace {

void check_geometry(uint32_t w, uint32_t h) {
  if (w == 0 || h == 0 || w % 4 != 0 || h % 2 != 0) {
    throw Error(ErrorKind::kShape, "block must be a nonzero multiple of 4x2, "
                                   "got " + std::to_string(w) + "x" +
                                       std::to_string(h));
  }
}

uint64_t magnitude(int32_t c) {
  return static_cast<uint64_t>(std::abs(static_cast<int64_t>(c)));
}

// Row-major offset of the top-left coefficient of every area of a plane, in
// serialization order.
std::vector<uint32_t> area_offsets(uint32_t w, uint32_t h) {
  const std::size_t n = areas_per_plane(w, h);
  std::vector<uint32_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const AreaCoordinate c = area_coordinate(k, w, h, 1);
    out[k] = c.row * w + c.col;
  }
  return out;
}

}  // namespace

CoefficientBlock CoefficientBlock::zeros(uint32_t width, uint32_t height,
                                         BlockKind kind, unsigned depth) {
  CoefficientBlock b;
  b.width = width;
  b.height = height;
  b.kind = kind;
  b.depth = depth;
  b.bands.assign(band_count(kind),
                 std::vector<int32_t>(static_cast<std::size_t>(width) * height));
  return b;
}

void CoefficientBlock::validate() const {
  check_geometry(width, height);
  if (bands.size() != band_count(kind)) {
    throw Error(ErrorKind::kShape, "wrong band count for block kind");
  }
  if (depth < 1 || depth > kMaxDepth) {
    throw Error(ErrorKind::kDepthOverflow,
                "depth " + std::to_string(depth) + " outside [1, 63]");
  }
  for (const auto& band : bands) {
    if (band.size() != static_cast<std::size_t>(width) * height) {
      throw Error(ErrorKind::kShape, "band size does not match block");
    }
    if (required_depth(band) > depth) {
      throw Error(ErrorKind::kDepthOverflow,
                  "coefficient magnitude needs more than " +
                      std::to_string(depth) + " planes");
    }
  }
}

unsigned required_depth(std::span<const int32_t> coeffs) {
  uint64_t peak = 0;
  for (int32_t c : coeffs) peak |= magnitude(c);
  return 1 + static_cast<unsigned>(std::bit_width(peak));
}

unsigned required_depth(const CoefficientBlock& block) {
  unsigned d = 1;
  for (const auto& band : block.bands) d = std::max(d, required_depth(band));
  return d;
}

BitplaneCube to_smr_planes(const CoefficientBlock& block) {
  block.validate();
  const unsigned d = block.depth;
  BitplaneCube cube(block.width, block.height, d, block.bands.size());
  for (std::size_t band = 0; band < block.bands.size(); ++band) {
    for (uint32_t r = 0; r < block.height; ++r) {
      for (uint32_t c = 0; c < block.width; ++c) {
        const int32_t v = block.at(band, r, c);
        cube.set_bit(band, 0, r, c, v < 0 ? 1 : 0);
        const uint64_t m = magnitude(v);
        for (unsigned p = 1; p < d; ++p) {
          cube.set_bit(band, p, r, c, (m >> (d - 1 - p)) & 1);
        }
      }
    }
  }
  return cube;
}

CoefficientBlock from_smr_planes(const BitplaneCube& cube, BlockKind kind) {
  if (cube.bands != band_count(kind)) {
    throw Error(ErrorKind::kShape, "cube band count does not match kind");
  }
  CoefficientBlock block =
      CoefficientBlock::zeros(cube.width, cube.height, kind, cube.depth);
  const unsigned d = cube.depth;
  for (std::size_t band = 0; band < cube.bands; ++band) {
    for (uint32_t r = 0; r < cube.height; ++r) {
      for (uint32_t c = 0; c < cube.width; ++c) {
        int64_t m = 0;
        for (unsigned p = 1; p < d; ++p) {
          m |= static_cast<int64_t>(cube.bit(band, p, r, c)) << (d - 1 - p);
        }
        if (cube.bit(band, 0, r, c)) m = -m;
        block.at(band, r, c) = static_cast<int32_t>(m);
      }
    }
  }
  return block;
}

AreaCoordinate area_coordinate(std::size_t k, uint32_t w, uint32_t h,
                               unsigned d) {
  check_geometry(w, h);
  const std::size_t per_plane = areas_per_plane(w, h);
  if (k >= per_plane * d) {
    throw Error(ErrorKind::kIndex, "area index " + std::to_string(k) +
                                       " >= " + std::to_string(per_plane * d));
  }
  const std::size_t kp = k % per_plane;
  const std::size_t per_band = w / 2;  // areas in a 4-row band
  const std::size_t full_bands = h / 4;
  AreaCoordinate c;
  c.plane = static_cast<uint32_t>(k / per_plane);
  if (kp < full_bands * per_band) {
    c.row = static_cast<uint32_t>(4 * (kp / per_band) + 2 * (kp % 2));
    c.col = static_cast<uint32_t>(4 * ((kp / 2) % (w / 4)));
  } else {
    c.row = static_cast<uint32_t>(4 * full_bands);
    c.col = static_cast<uint32_t>(4 * (kp - full_bands * per_band));
  }
  return c;
}

uint8_t area_to_symbol(const BitplaneCube& cube, std::size_t band,
                       const AreaCoordinate& c) {
  unsigned s = 0;
  for (uint32_t m = c.row; m <= c.row + 1; ++m) {
    for (uint32_t n = c.col; n <= c.col + 3; ++n) {
      s += static_cast<unsigned>(cube.bit(band, c.plane, m, n))
           << ((n - c.col) + 4 * (m - c.row));
    }
  }
  return static_cast<uint8_t>(s);
}

void symbol_to_area(uint8_t symbol, BitplaneCube& cube, std::size_t band,
                    const AreaCoordinate& c) {
  for (uint32_t m = c.row; m <= c.row + 1; ++m) {
    for (uint32_t n = c.col; n <= c.col + 3; ++n) {
      const unsigned shift = (n - c.col) + 4 * (m - c.row);
      cube.set_bit(band, c.plane, m, n, (symbol >> shift) & 1);
    }
  }
}

SymbolStream serialize_block(const CoefficientBlock& block) {
  block.validate();
  const uint32_t w = block.width;
  const unsigned d = block.depth;
  const std::size_t bands = block.bands.size();
  const std::size_t per_plane = areas_per_plane(w, block.height);
  const std::vector<uint32_t> offsets = area_offsets(w, block.height);

  SymbolStream out;
  out.symbols.assign(d * bands * per_plane, 0);
  out.plane_boundaries.resize(d * bands);
  for (std::size_t slot = 0; slot < d * bands; ++slot) {
    out.plane_boundaries[slot] = slot * per_plane;
  }

  for (std::size_t band = 0; band < bands; ++band) {
    const int32_t* coeffs = block.bands[band].data();
    for (std::size_t k = 0; k < per_plane; ++k) {
      const int32_t* top = coeffs + offsets[k];
      const int32_t* bottom = top + w;
      uint64_t mag[8];
      unsigned sign = 0;
      uint64_t any = 0;
      for (unsigned q = 0; q < 4; ++q) {
        mag[q] = magnitude(top[q]);
        mag[q + 4] = magnitude(bottom[q]);
        sign |= static_cast<unsigned>(top[q] < 0) << q;
        sign |= static_cast<unsigned>(bottom[q] < 0) << (q + 4);
        any |= mag[q] | mag[q + 4];
      }
      out.symbols[band * per_plane + k] = static_cast<uint8_t>(sign);
      if (any == 0) continue;
      for (unsigned p = 1; p < d; ++p) {
        const unsigned bit = d - 1 - p;
        if ((any >> bit) == 0) continue;
        unsigned s = 0;
        for (unsigned q = 0; q < 8; ++q) {
          s |= static_cast<unsigned>((mag[q] >> bit) & 1) << q;
        }
        out.symbols[(p * bands + band) * per_plane + k] =
            static_cast<uint8_t>(s);
      }
    }
  }
  return out;
}

CoefficientBlock deserialize_block(const SymbolStream& stream, uint32_t width,
                                   uint32_t height, BlockKind kind,
                                   unsigned depth) {
  check_geometry(width, height);
  const std::size_t bands = band_count(kind);
  const std::size_t per_plane = areas_per_plane(width, height);
  if (stream.symbols.size() != depth * bands * per_plane) {
    throw Error(ErrorKind::kShape, "symbol count does not match block");
  }
  CoefficientBlock block = CoefficientBlock::zeros(width, height, kind, depth);
  const std::vector<uint32_t> offsets = area_offsets(width, height);
  const uint8_t* sym = stream.symbols.data();

  for (std::size_t band = 0; band < bands; ++band) {
    int32_t* coeffs = block.bands[band].data();
    for (std::size_t k = 0; k < per_plane; ++k) {
      uint64_t mag[8] = {0, 0, 0, 0, 0, 0, 0, 0};
      for (unsigned p = 1; p < depth; ++p) {
        const unsigned s = sym[(p * bands + band) * per_plane + k];
        if (s == 0) continue;
        const unsigned bit = depth - 1 - p;
        for (unsigned q = 0; q < 8; ++q) {
          mag[q] |= static_cast<uint64_t>((s >> q) & 1) << bit;
        }
      }
      const unsigned sign = sym[band * per_plane + k];
      int32_t* top = coeffs + offsets[k];
      int32_t* bottom = top + width;
      for (unsigned q = 0; q < 4; ++q) {
        const auto a = static_cast<int64_t>(mag[q]);
        const auto b = static_cast<int64_t>(mag[q + 4]);
        top[q] = static_cast<int32_t>(((sign >> q) & 1) ? -a : a);
        bottom[q] = static_cast<int32_t>(((sign >> (q + 4)) & 1) ? -b : b);
      }
    }
  }
  return block;
}

}  // namespace wbpc
