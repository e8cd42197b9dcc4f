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

#ifndef WBPC_TRANSFORMS_HPP_
#define WBPC_TRANSFORMS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wbpc/image.hpp"
#include "wbpc/parallel.hpp"

namespace wbpc {

inline constexpr int kMaxLevels = 8;

// ---------------------------------------------------------------------------
// Reversible color transform (JPEG2000 RCT).
//   Y  = floor((R + 2G + B) / 4)
//   Cb = B - G
//   Cr = R - G
// ---------------------------------------------------------------------------
std::array<ChannelPlane, 3> rct_forward(const RasterImage& rgb);

// Exact inverse on signed planes; no clamping.
std::array<ChannelPlane, 3> rct_inverse_planes(const ChannelPlane& y,
                                               const ChannelPlane& cb,
                                               const ChannelPlane& cr);

// Inverse into a raster, clamping to the sample range of bit_depth.
RasterImage rct_inverse(const ChannelPlane& y, const ChannelPlane& cb,
                        const ChannelPlane& cr, uint32_t bit_depth);

// ---------------------------------------------------------------------------
// 5/3 Le Gall integer lifting with half-sample symmetric extension.
//   high[n] = x[2n+1] - floor((x[2n] + x[2n+2]) / 2)
//   low[n]  = x[2n]   + floor((high[n-1] + high[n] + 2) / 4)
// low has ceil(n/2) samples, high floor(n/2).
// ---------------------------------------------------------------------------
struct LiftBands {
  std::vector<int32_t> low;
  std::vector<int32_t> high;
};

LiftBands lift53_forward(std::span<const int32_t> signal);
std::vector<int32_t> lift53_inverse(std::span<const int32_t> low,
                                    std::span<const int32_t> high);

inline constexpr std::size_t low_length(std::size_t n) { return (n + 1) / 2; }
inline constexpr std::size_t high_length(std::size_t n) { return n / 2; }

// Detail bands of one decomposition level. HL is high-pass horizontally,
// LH high-pass vertically.
struct DetailBands {
  ChannelPlane lh;
  ChannelPlane hl;
  ChannelPlane hh;

  bool operator==(const DetailBands&) const = default;
};

// details[l - 1] holds level l (level 1 is the finest). ll is LL_L.
struct SubbandPyramid {
  std::vector<DetailBands> details;
  ChannelPlane ll;

  int levels() const { return static_cast<int>(details.size()); }
  bool operator==(const SubbandPyramid&) const = default;
};

// Dimensions of LL_level for a width x height plane.
struct Extent {
  std::size_t width = 0;
  std::size_t height = 0;
  bool operator==(const Extent&) const = default;
};
Extent level_extent(Extent full, int level);

// Row-then-column lifting, recursing on LL. Throws kLevelRange unless
// 0 <= levels <= kMaxLevels, kDomain for an empty plane.
SubbandPyramid dwt2d_forward(const ChannelPlane& plane, int levels,
                             const ExecutionPolicy& policy = {});

// Full inverse; throws kShape when the subband dimensions are inconsistent.
ChannelPlane dwt2d_inverse(const SubbandPyramid& pyramid,
                           const ExecutionPolicy& policy = {});

// Synthesizes LL_stop_level from LL_L and the details of levels above
// stop_level. details of levels <= stop_level are ignored and may be empty.
ChannelPlane dwt2d_inverse_to_level(const SubbandPyramid& pyramid,
                                    int stop_level,
                                    const ExecutionPolicy& policy = {});

// One analysis / synthesis step.
void dwt2d_analyze_level(const ChannelPlane& in, ChannelPlane& ll,
                         DetailBands& details, const ExecutionPolicy& policy);
ChannelPlane dwt2d_synthesize_level(const ChannelPlane& ll,
                                    const DetailBands& details,
                                    const ExecutionPolicy& policy);

// L = 5 when both sides exceed 512, otherwise the largest L (<= 5) that
// keeps LL at least 16x16; 0 for images smaller than 16 on a side.
int default_levels(std::size_t width, std::size_t height);

// ---------------------------------------------------------------------------
// Windowed synthesis, used by region decode. Coefficients are addressed in
// full-band index space; windows carry their origin.
// ---------------------------------------------------------------------------
struct Interval {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool operator==(const Interval&) const = default;
};

// Low and high band index ranges needed to synthesize output samples
// [out.begin, out.end) of a length-n signal.
struct SynthesisSupport {
  Interval low;
  Interval high;
};
SynthesisSupport synthesis_support(Interval out, std::size_t n);

// Inverse lifting restricted to out, given low samples starting at low_origin
// and high samples starting at high_origin that cover synthesis_support(out).
void lift53_inverse_window(std::span<const int32_t> low, std::size_t low_origin,
                           std::span<const int32_t> high,
                           std::size_t high_origin, std::size_t n, Interval out,
                           std::span<int32_t> dst);

// A rectangular piece of a band in band coordinates.
struct PlaneWindow {
  Interval cols;
  Interval rows;
  ChannelPlane data;  // cols.size() x rows.size()
};

// Synthesizes the window (out_cols x out_rows) of LL_{l-1}, whose full
// extent is full, from windows of LL_l, HL_l, LH_l and HH_l that cover the
// required support.
ChannelPlane synthesize_window(const PlaneWindow& ll, const PlaneWindow& hl,
                               const PlaneWindow& lh, const PlaneWindow& hh,
                               Extent full, Interval out_cols,
                               Interval out_rows);

}  // namespace wbpc

#endif  // WBPC_TRANSFORMS_HPP_
