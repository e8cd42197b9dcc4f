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

#include "wbpc/reference.hpp"

#include "wbpc/error.hpp"

namespace wbpc::reference {
namespace {

void analyze(const ChannelPlane& in, ChannelPlane& ll, DetailBands& d) {
  const std::size_t w = in.width, h = in.height;
  const std::size_t nlw = low_length(w), nlh = low_length(h);
  ChannelPlane rows(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const LiftBands b = lift53_forward(in.row(y));
    std::copy(b.low.begin(), b.low.end(), rows.row(y).begin());
    std::copy(b.high.begin(), b.high.end(), rows.row(y).begin() + nlw);
  }
  ChannelPlane out(w, h);
  std::vector<int32_t> column(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) column[y] = rows.at(x, y);
    const LiftBands b = lift53_forward(column);
    for (std::size_t y = 0; y < b.low.size(); ++y) out.at(x, y) = b.low[y];
    for (std::size_t y = 0; y < b.high.size(); ++y) out.at(x, nlh + y) = b.high[y];
  }
  ll = crop(out, 0, 0, nlw, nlh);
  d.hl = crop(out, nlw, 0, w - nlw, nlh);
  d.lh = crop(out, 0, nlh, nlw, h - nlh);
  d.hh = crop(out, nlw, nlh, w - nlw, h - nlh);
}

ChannelPlane synthesize(const ChannelPlane& ll, const DetailBands& d) {
  const std::size_t nlw = ll.width, nlh = ll.height;
  const std::size_t w = nlw + d.hl.width, h = nlh + d.lh.height;
  ChannelPlane cols(w, h);
  std::vector<int32_t> low, high;
  for (std::size_t x = 0; x < w; ++x) {
    const bool left = x < nlw;
    const ChannelPlane& top = left ? ll : d.hl;
    const ChannelPlane& bottom = left ? d.lh : d.hh;
    const std::size_t xx = left ? x : x - nlw;
    low.assign(nlh, 0);
    high.assign(h - nlh, 0);
    for (std::size_t y = 0; y < nlh; ++y) low[y] = top.at(xx, y);
    for (std::size_t y = 0; y < h - nlh; ++y) high[y] = bottom.at(xx, y);
    const std::vector<int32_t> col = lift53_inverse(low, high);
    for (std::size_t y = 0; y < h; ++y) cols.at(x, y) = col[y];
  }
  ChannelPlane out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const auto row = cols.row(y);
    const std::vector<int32_t> x = lift53_inverse(row.first(nlw),
                                                  row.subspan(nlw));
    std::copy(x.begin(), x.end(), out.row(y).begin());
  }
  return out;
}

}  // namespace

SubbandPyramid dwt2d_forward(const ChannelPlane& plane, int levels) {
  if (levels < 0 || levels > kMaxLevels) {
    throw Error(ErrorKind::kLevelRange, "levels out of range");
  }
  SubbandPyramid pyr;
  pyr.details.resize(levels);
  pyr.ll = plane;
  for (int l = 0; l < levels; ++l) {
    ChannelPlane next;
    analyze(pyr.ll, next, pyr.details[l]);
    pyr.ll = std::move(next);
  }
  return pyr;
}

ChannelPlane dwt2d_inverse(const SubbandPyramid& pyramid) {
  ChannelPlane cur = pyramid.ll;
  for (int l = pyramid.levels(); l > 0; --l) {
    cur = synthesize(cur, pyramid.details[l - 1]);
  }
  return cur;
}

SymbolStream serialize_block(const CoefficientBlock& block) {
  const BitplaneCube cube = to_smr_planes(block);
  const std::size_t bands = cube.bands;
  const std::size_t per_plane = areas_per_plane(block.width, block.height);
  SymbolStream out;
  for (unsigned p = 0; p < block.depth; ++p) {
    for (std::size_t band = 0; band < bands; ++band) {
      out.plane_boundaries.push_back(out.symbols.size());
      for (std::size_t k = 0; k < per_plane; ++k) {
        const AreaCoordinate c =
            area_coordinate(p * per_plane + k, block.width, block.height,
                            block.depth);
        out.symbols.push_back(area_to_symbol(cube, band, c));
      }
    }
  }
  return out;
}

CoefficientBlock deserialize_block(const SymbolStream& stream, uint32_t width,
                                   uint32_t height, BlockKind kind,
                                   unsigned depth) {
  const std::size_t bands = band_count(kind);
  const std::size_t per_plane = areas_per_plane(width, height);
  BitplaneCube cube(width, height, depth, bands);
  std::size_t i = 0;
  for (unsigned p = 0; p < depth; ++p) {
    for (std::size_t band = 0; band < bands; ++band) {
      for (std::size_t k = 0; k < per_plane; ++k) {
        const AreaCoordinate c =
            area_coordinate(p * per_plane + k, width, height, depth);
        symbol_to_area(stream.symbols.at(i++), cube, band, c);
      }
    }
  }
  return from_smr_planes(cube, kind);
}

}  // namespace wbpc::reference
