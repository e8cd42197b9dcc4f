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

#include "wbpc/transforms.hpp"

#include <algorithm>
#include <string>

#include "wbpc/error.hpp"

namespace wbpc {
namespace {

// Planes below this many samples are transformed without spinning up an
// OpenMP team.
constexpr std::size_t kParallelThreshold = 1 << 14;

void forward_1d(const int32_t* x, std::size_t n, int32_t* low, int32_t* high) {
  if (n == 1) {
    low[0] = x[0];
    return;
  }
  const std::size_t nl = low_length(n);
  const std::size_t nh = high_length(n);
  for (std::size_t k = 0; k < nh; ++k) {
    const int32_t right = (2 * k + 2 < n) ? x[2 * k + 2] : x[2 * k];
    high[k] = x[2 * k + 1] - ((x[2 * k] + right) >> 1);
  }
  for (std::size_t k = 0; k < nl; ++k) {
    const int32_t prev = high[k == 0 ? 0 : k - 1];
    const int32_t next = high[k < nh ? k : nh - 1];
    low[k] = x[2 * k] + ((prev + next + 2) >> 2);
  }
}

void inverse_1d(const int32_t* low, const int32_t* high, std::size_t n,
                int32_t* x) {
  if (n == 1) {
    x[0] = low[0];
    return;
  }
  const std::size_t nl = low_length(n);
  const std::size_t nh = high_length(n);
  for (std::size_t k = 0; k < nl; ++k) {
    const int32_t prev = high[k == 0 ? 0 : k - 1];
    const int32_t next = high[k < nh ? k : nh - 1];
    x[2 * k] = low[k] - ((prev + next + 2) >> 2);
  }
  for (std::size_t k = 0; k < nh; ++k) {
    const int32_t right = (2 * k + 2 < n) ? x[2 * k + 2] : x[2 * k];
    x[2 * k + 1] = high[k] + ((x[2 * k] + right) >> 1);
  }
}

void check_plane(const ChannelPlane& p, const char* what) {
  if (p.values.size() != p.width * p.height) {
    throw Error(ErrorKind::kShape, std::string(what) + " has wrong size");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Color transform

std::array<ChannelPlane, 3> rct_forward(const RasterImage& rgb) {
  if (rgb.channels != 3) {
    throw Error(ErrorKind::kUnsupportedLayout,
                "RCT needs 3 channels, got " + std::to_string(rgb.channels));
  }
  const std::size_t n = rgb.plane_size();
  std::array<ChannelPlane, 3> out{ChannelPlane(rgb.width, rgb.height),
                                  ChannelPlane(rgb.width, rgb.height),
                                  ChannelPlane(rgb.width, rgb.height)};
  auto r = rgb.channel(0);
  auto g = rgb.channel(1);
  auto b = rgb.channel(2);
  for (std::size_t i = 0; i < n; ++i) {
    const int32_t rv = r[i], gv = g[i], bv = b[i];
    out[0].values[i] = (rv + 2 * gv + bv) >> 2;
    out[1].values[i] = bv - gv;
    out[2].values[i] = rv - gv;
  }
  return out;
}

std::array<ChannelPlane, 3> rct_inverse_planes(const ChannelPlane& y,
                                               const ChannelPlane& cb,
                                               const ChannelPlane& cr) {
  if (y.width != cb.width || y.width != cr.width || y.height != cb.height ||
      y.height != cr.height) {
    throw Error(ErrorKind::kShape, "RCT planes differ in size");
  }
  check_plane(y, "Y");
  check_plane(cb, "Cb");
  check_plane(cr, "Cr");
  std::array<ChannelPlane, 3> out{ChannelPlane(y.width, y.height),
                                  ChannelPlane(y.width, y.height),
                                  ChannelPlane(y.width, y.height)};
  for (std::size_t i = 0; i < y.values.size(); ++i) {
    const int32_t g = y.values[i] - ((cb.values[i] + cr.values[i]) >> 2);
    out[0].values[i] = cr.values[i] + g;
    out[1].values[i] = g;
    out[2].values[i] = cb.values[i] + g;
  }
  return out;
}

RasterImage rct_inverse(const ChannelPlane& y, const ChannelPlane& cb,
                        const ChannelPlane& cr, uint32_t bit_depth) {
  auto planes = rct_inverse_planes(y, cb, cr);
  return from_planes(planes, bit_depth);
}

// ---------------------------------------------------------------------------
// 1-D lifting

LiftBands lift53_forward(std::span<const int32_t> signal) {
  if (signal.empty()) throw Error(ErrorKind::kDomain, "empty signal");
  LiftBands out;
  out.low.resize(low_length(signal.size()));
  out.high.resize(high_length(signal.size()));
  forward_1d(signal.data(), signal.size(), out.low.data(), out.high.data());
  return out;
}

std::vector<int32_t> lift53_inverse(std::span<const int32_t> low,
                                    std::span<const int32_t> high) {
  const std::size_t n = low.size() + high.size();
  if (low.empty() || low.size() != low_length(n) ||
      high.size() != high_length(n)) {
    throw Error(ErrorKind::kShape, "incompatible band lengths " +
                                       std::to_string(low.size()) + "/" +
                                       std::to_string(high.size()));
  }
  std::vector<int32_t> x(n);
  inverse_1d(low.data(), high.data(), n, x.data());
  return x;
}

// ---------------------------------------------------------------------------
// 2-D

Extent level_extent(Extent full, int level) {
  for (int l = 0; l < level; ++l) {
    full.width = low_length(full.width);
    full.height = low_length(full.height);
  }
  return full;
}

void dwt2d_analyze_level(const ChannelPlane& in, ChannelPlane& ll,
                         DetailBands& details, const ExecutionPolicy& policy) {
  const std::size_t w = in.width, h = in.height;
  const std::size_t nlw = low_length(w), nhw = high_length(w);
  const std::size_t nlh = low_length(h), nhh = high_length(h);
  const int threads = resolve_threads(policy);
  const bool par = w * h >= kParallelThreshold && threads > 1;
  const auto rows = static_cast<std::ptrdiff_t>(h);

  // Horizontal pass: each row becomes [low | high].
  ChannelPlane t(w, h);
#pragma omp parallel for schedule(static) num_threads(threads) if (par)
  for (std::ptrdiff_t y = 0; y < rows; ++y) {
    int32_t* dst = t.row(y).data();
    forward_1d(in.row(y).data(), w, dst, dst + nlw);
  }

  // Vertical pass on whole rows: low rows first, then high rows.
  ChannelPlane v(w, h);
  if (h == 1) {
    v = t;
  } else {
    const auto nh_rows = static_cast<std::ptrdiff_t>(nhh);
    const auto nl_rows = static_cast<std::ptrdiff_t>(nlh);
#pragma omp parallel for schedule(static) num_threads(threads) if (par)
    for (std::ptrdiff_t k = 0; k < nh_rows; ++k) {
      const std::size_t right = (2 * k + 2 < static_cast<std::ptrdiff_t>(h))
                                    ? 2 * k + 2
                                    : 2 * k;
      const int32_t* a = t.row(2 * k).data();
      const int32_t* b = t.row(2 * k + 1).data();
      const int32_t* c = t.row(right).data();
      int32_t* dst = v.row(nlh + k).data();
      for (std::size_t x = 0; x < w; ++x) dst[x] = b[x] - ((a[x] + c[x]) >> 1);
    }
#pragma omp parallel for schedule(static) num_threads(threads) if (par)
    for (std::ptrdiff_t k = 0; k < nl_rows; ++k) {
      const std::size_t kp = k == 0 ? 0 : k - 1;
      const std::size_t kn = static_cast<std::size_t>(k) < nhh ? k : nhh - 1;
      const int32_t* s = t.row(2 * k).data();
      const int32_t* hp = v.row(nlh + kp).data();
      const int32_t* hn = v.row(nlh + kn).data();
      int32_t* dst = v.row(k).data();
      for (std::size_t x = 0; x < w; ++x) {
        dst[x] = s[x] + ((hp[x] + hn[x] + 2) >> 2);
      }
    }
  }

  ll = ChannelPlane(nlw, nlh);
  details.hl = ChannelPlane(nhw, nlh);
  details.lh = ChannelPlane(nlw, nhh);
  details.hh = ChannelPlane(nhw, nhh);
  for (std::size_t y = 0; y < h; ++y) {
    auto src = v.row(y);
    if (y < nlh) {
      std::copy_n(src.begin(), nlw, ll.row(y).begin());
      std::copy_n(src.begin() + nlw, nhw, details.hl.row(y).begin());
    } else {
      std::copy_n(src.begin(), nlw, details.lh.row(y - nlh).begin());
      std::copy_n(src.begin() + nlw, nhw, details.hh.row(y - nlh).begin());
    }
  }
}

ChannelPlane dwt2d_synthesize_level(const ChannelPlane& ll,
                                    const DetailBands& details,
                                    const ExecutionPolicy& policy) {
  check_plane(ll, "LL");
  check_plane(details.hl, "HL");
  check_plane(details.lh, "LH");
  check_plane(details.hh, "HH");
  const std::size_t nlw = ll.width, nlh = ll.height;
  const std::size_t nhw = details.hl.width, nhh = details.lh.height;
  const std::size_t w = nlw + nhw, h = nlh + nhh;
  if (ll.empty() || low_length(w) != nlw || high_length(w) != nhw ||
      low_length(h) != nlh || high_length(h) != nhh ||
      details.hl.height != nlh || details.lh.width != nlw ||
      details.hh.width != nhw || details.hh.height != nhh) {
    throw Error(ErrorKind::kShape, "inconsistent subband dimensions");
  }
  const int threads = resolve_threads(policy);
  const bool par = w * h >= kParallelThreshold && threads > 1;

  ChannelPlane v(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    auto dst = v.row(y);
    if (y < nlh) {
      std::copy_n(ll.row(y).begin(), nlw, dst.begin());
      std::copy_n(details.hl.row(y).begin(), nhw, dst.begin() + nlw);
    } else {
      std::copy_n(details.lh.row(y - nlh).begin(), nlw, dst.begin());
      std::copy_n(details.hh.row(y - nlh).begin(), nhw, dst.begin() + nlw);
    }
  }

  ChannelPlane t(w, h);
  if (h == 1) {
    t = v;
  } else {
    const auto nl_rows = static_cast<std::ptrdiff_t>(nlh);
    const auto nh_rows = static_cast<std::ptrdiff_t>(nhh);
#pragma omp parallel for schedule(static) num_threads(threads) if (par)
    for (std::ptrdiff_t k = 0; k < nl_rows; ++k) {
      const std::size_t kp = k == 0 ? 0 : k - 1;
      const std::size_t kn = static_cast<std::size_t>(k) < nhh ? k : nhh - 1;
      const int32_t* s = v.row(k).data();
      const int32_t* hp = v.row(nlh + kp).data();
      const int32_t* hn = v.row(nlh + kn).data();
      int32_t* dst = t.row(2 * k).data();
      for (std::size_t x = 0; x < w; ++x) {
        dst[x] = s[x] - ((hp[x] + hn[x] + 2) >> 2);
      }
    }
#pragma omp parallel for schedule(static) num_threads(threads) if (par)
    for (std::ptrdiff_t k = 0; k < nh_rows; ++k) {
      const std::size_t right = (2 * k + 2 < static_cast<std::ptrdiff_t>(h))
                                    ? 2 * k + 2
                                    : 2 * k;
      const int32_t* a = t.row(2 * k).data();
      const int32_t* c = t.row(right).data();
      const int32_t* hi = v.row(nlh + k).data();
      int32_t* dst = t.row(2 * k + 1).data();
      for (std::size_t x = 0; x < w; ++x) dst[x] = hi[x] + ((a[x] + c[x]) >> 1);
    }
  }

  ChannelPlane out(w, h);
  const auto rows = static_cast<std::ptrdiff_t>(h);
#pragma omp parallel for schedule(static) num_threads(threads) if (par)
  for (std::ptrdiff_t y = 0; y < rows; ++y) {
    const int32_t* src = t.row(y).data();
    inverse_1d(src, src + nlw, w, out.row(y).data());
  }
  return out;
}

SubbandPyramid dwt2d_forward(const ChannelPlane& plane, int levels,
                             const ExecutionPolicy& policy) {
  if (levels < 0 || levels > kMaxLevels) {
    throw Error(ErrorKind::kLevelRange,
                "levels must be in [0, " + std::to_string(kMaxLevels) +
                    "], got " + std::to_string(levels));
  }
  if (plane.empty()) throw Error(ErrorKind::kDomain, "empty plane");
  check_plane(plane, "input");
  SubbandPyramid pyr;
  pyr.details.resize(levels);
  pyr.ll = plane;
  for (int l = 0; l < levels; ++l) {
    ChannelPlane next;
    dwt2d_analyze_level(pyr.ll, next, pyr.details[l], policy);
    pyr.ll = std::move(next);
  }
  return pyr;
}

ChannelPlane dwt2d_inverse_to_level(const SubbandPyramid& pyramid,
                                    int stop_level,
                                    const ExecutionPolicy& policy) {
  if (stop_level < 0 || stop_level > pyramid.levels()) {
    throw Error(ErrorKind::kLevelRange, "stop level out of range");
  }
  ChannelPlane cur = pyramid.ll;
  for (int l = pyramid.levels(); l > stop_level; --l) {
    cur = dwt2d_synthesize_level(cur, pyramid.details[l - 1], policy);
  }
  return cur;
}

ChannelPlane dwt2d_inverse(const SubbandPyramid& pyramid,
                           const ExecutionPolicy& policy) {
  return dwt2d_inverse_to_level(pyramid, 0, policy);
}

int default_levels(std::size_t width, std::size_t height) {
  if (width > 512 && height > 512) return 5;
  int levels = 0;
  Extent e{width, height};
  while (levels < 5) {
    Extent next = level_extent(e, 1);
    if (next.width < 16 || next.height < 16) break;
    e = next;
    ++levels;
  }
  return levels;
}

// ---------------------------------------------------------------------------
// Windowed synthesis

SynthesisSupport synthesis_support(Interval out, std::size_t n) {
  SynthesisSupport s;
  if (out.empty() || n == 0) return s;
  if (out.end > n) throw Error(ErrorKind::kShape, "window beyond signal");
  if (n == 1) {
    s.low = {0, 1};
    return s;
  }
  const std::size_t nl = low_length(n), nh = high_length(n);
  const std::size_t a = out.begin, b = out.end;

  // Even outputs x = 2k need e(k); odd outputs x = 2k + 1 need high(k),
  // e(k) and e(min(k + 1, nl - 1)).
  const Interval even{(a + 1) / 2, (b + 1) / 2};
  const Interval odd{a / 2, b / 2};
  std::size_t e_lo = n, e_hi = 0;  // inclusive
  if (!even.empty()) {
    e_lo = std::min(e_lo, even.begin);
    e_hi = std::max(e_hi, even.end - 1);
  }
  if (!odd.empty()) {
    e_lo = std::min(e_lo, odd.begin);
    e_hi = std::max(e_hi, std::min(odd.end, nl - 1));
  }
  s.low = {e_lo, e_hi + 1};

  // e(k) reads high(clamp(k - 1)) and high(clamp(k)).
  auto clamp_h = [nh](std::ptrdiff_t k) {
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(nh) - 1));
  };
  std::size_t h_lo = clamp_h(static_cast<std::ptrdiff_t>(e_lo) - 1);
  std::size_t h_hi = clamp_h(static_cast<std::ptrdiff_t>(e_hi));
  if (!odd.empty()) {
    h_lo = std::min(h_lo, odd.begin);
    h_hi = std::max(h_hi, odd.end - 1);
  }
  s.high = {h_lo, h_hi + 1};
  return s;
}

void lift53_inverse_window(std::span<const int32_t> low, std::size_t low_origin,
                           std::span<const int32_t> high,
                           std::size_t high_origin, std::size_t n, Interval out,
                           std::span<int32_t> dst) {
  if (out.empty()) return;
  if (dst.size() < out.size()) throw Error(ErrorKind::kShape, "dst too small");
  const SynthesisSupport sup = synthesis_support(out, n);
  if (sup.low.begin < low_origin || sup.low.end > low_origin + low.size() ||
      (!sup.high.empty() && (sup.high.begin < high_origin ||
                             sup.high.end > high_origin + high.size()))) {
    throw Error(ErrorKind::kShape, "window does not cover synthesis support");
  }
  if (n == 1) {
    dst[0] = low[0 - low_origin];
    return;
  }
  const std::size_t nl = low_length(n), nh = high_length(n);
  auto hv = [&](std::ptrdiff_t k) {
    const auto kk = std::clamp<std::ptrdiff_t>(
        k, 0, static_cast<std::ptrdiff_t>(nh) - 1);
    return high[static_cast<std::size_t>(kk) - high_origin];
  };
  std::vector<int32_t> even(sup.low.size());
  for (std::size_t k = sup.low.begin; k < sup.low.end; ++k) {
    const auto sk = static_cast<std::ptrdiff_t>(k);
    even[k - sup.low.begin] =
        low[k - low_origin] - ((hv(sk - 1) + hv(sk) + 2) >> 2);
  }
  for (std::size_t x = out.begin; x < out.end; ++x) {
    const std::size_t k = x / 2;
    int32_t v;
    if (x % 2 == 0) {
      v = even[k - sup.low.begin];
    } else {
      const std::size_t k1 = std::min(k + 1, nl - 1);
      v = high[k - high_origin] +
          ((even[k - sup.low.begin] + even[k1 - sup.low.begin]) >> 1);
    }
    dst[x - out.begin] = v;
  }
}

namespace {

bool covers(const PlaneWindow& w, Interval cols, Interval rows) {
  if (cols.empty() || rows.empty()) return true;
  return w.cols.begin <= cols.begin && w.cols.end >= cols.end &&
         w.rows.begin <= rows.begin && w.rows.end >= rows.end &&
         w.data.width == w.cols.size() && w.data.height == w.rows.size();
}

// Column c of window w (band coordinates), restricted to the window rows.
void gather_column(const PlaneWindow& w, std::size_t c,
                   std::vector<int32_t>& out) {
  out.resize(w.rows.size());
  if (w.rows.empty()) return;
  const std::size_t x = c - w.cols.begin;
  for (std::size_t r = 0; r < w.rows.size(); ++r) out[r] = w.data.at(x, r);
}

}  // namespace

ChannelPlane synthesize_window(const PlaneWindow& ll, const PlaneWindow& hl,
                               const PlaneWindow& lh, const PlaneWindow& hh,
                               Extent full, Interval out_cols,
                               Interval out_rows) {
  const SynthesisSupport sx = synthesis_support(out_cols, full.width);
  const SynthesisSupport sy = synthesis_support(out_rows, full.height);
  if (!covers(ll, sx.low, sy.low) || !covers(hl, sx.high, sy.low) ||
      !covers(lh, sx.low, sy.high) || !covers(hh, sx.high, sy.high)) {
    throw Error(ErrorKind::kShape, "windows do not cover synthesis support");
  }

  // Vertical synthesis into the horizontal low part (columns sx.low) and
  // high part (columns sx.high), rows out_rows.
  ChannelPlane lpart(sx.low.size(), out_rows.size());
  ChannelPlane hpart(sx.high.size(), out_rows.size());
  std::vector<int32_t> lo_col, hi_col, dst(out_rows.size());
  for (std::size_t c = sx.low.begin; c < sx.low.end; ++c) {
    gather_column(ll, c, lo_col);
    if (sy.high.empty()) hi_col.clear(); else gather_column(lh, c, hi_col);
    lift53_inverse_window(lo_col, ll.rows.begin, hi_col, lh.rows.begin,
                          full.height, out_rows, dst);
    for (std::size_t r = 0; r < out_rows.size(); ++r) {
      lpart.at(c - sx.low.begin, r) = dst[r];
    }
  }
  for (std::size_t c = sx.high.begin; c < sx.high.end; ++c) {
    gather_column(hl, c, lo_col);
    if (sy.high.empty()) hi_col.clear(); else gather_column(hh, c, hi_col);
    lift53_inverse_window(lo_col, hl.rows.begin, hi_col, hh.rows.begin,
                          full.height, out_rows, dst);
    for (std::size_t r = 0; r < out_rows.size(); ++r) {
      hpart.at(c - sx.high.begin, r) = dst[r];
    }
  }

  ChannelPlane out(out_cols.size(), out_rows.size());
  for (std::size_t r = 0; r < out_rows.size(); ++r) {
    lift53_inverse_window(lpart.row(r), sx.low.begin, hpart.row(r),
                          sx.high.begin, full.width, out_cols, out.row(r));
  }
  return out;
}

}  // namespace wbpc
