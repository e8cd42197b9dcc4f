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

#include "wbpc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "json.hpp"
#include "wbpc/container.hpp"
#include "wbpc/error.hpp"
#include "wbpc/parallel.hpp"
#include "wbpc/png_io.hpp"
#include "wbpc/pnm.hpp"

namespace wbpc {
namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool is_pnm(const fs::path& p) {
  const auto e = p.extension();
  return e == ".pgm" || e == ".ppm" || e == ".pnm";
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

double BenchRow::encode_mps() const {
  return encode_seconds > 0 ? pixels() / encode_seconds / 1e6 : 0.0;
}

double BenchRow::decode_mps() const {
  return decode_seconds > 0 ? pixels() / decode_seconds / 1e6 : 0.0;
}

std::optional<double> BenchRow::ratio() const {
  if (!baseline_bytes || *baseline_bytes == 0) return std::nullopt;
  return static_cast<double>(encoded_bytes) / *baseline_bytes;
}

std::optional<double> BenchReport::aggregate_ratio() const {
  std::size_t enc = 0, base = 0;
  for (const auto& r : rows) {
    if (!r.baseline_bytes) continue;
    enc += r.encoded_bytes;
    base += *r.baseline_bytes;
  }
  if (base == 0) return std::nullopt;
  return static_cast<double>(enc) / base;
}

double BenchReport::aggregate_encode_mps() const {
  double px = 0, t = 0;
  for (const auto& r : rows) {
    px += r.pixels();
    t += r.encode_seconds;
  }
  return t > 0 ? px / t / 1e6 : 0.0;
}

double BenchReport::aggregate_decode_mps() const {
  double px = 0, t = 0;
  for (const auto& r : rows) {
    px += r.pixels();
    t += r.decode_seconds;
  }
  return t > 0 ? px / t / 1e6 : 0.0;
}

std::string BenchReport::to_json() const {
  using nlohmann::json;
  json rs = json::array();
  for (const auto& r : rows) {
    json j{{"name", r.name},
           {"width", r.width},
           {"height", r.height},
           {"channels", r.channels},
           {"bit_depth", r.bit_depth},
           {"pixels", r.pixels()},
           {"raw_bytes", r.raw_bytes},
           {"encoded_bytes", r.encoded_bytes},
           {"baseline_bytes", nullptr},
           {"ratio", nullptr},
           {"encode_seconds", r.encode_seconds},
           {"decode_seconds", r.decode_seconds},
           {"encode_mps", r.encode_mps()},
           {"decode_mps", r.decode_mps()},
           {"lossless", r.lossless}};
    if (r.baseline_bytes) j["baseline_bytes"] = *r.baseline_bytes;
    if (auto q = r.ratio()) j["ratio"] = *q;
    rs.push_back(std::move(j));
  }
  json agg{{"images", rows.size()},
           {"ratio", nullptr},
           {"encode_mps", aggregate_encode_mps()},
           {"decode_mps", aggregate_decode_mps()}};
  if (auto q = aggregate_ratio()) agg["ratio"] = *q;
  json out{{"threads", threads},
           {"max_concurrent_blocks", max_concurrent_blocks},
           {"rows", rs},
           {"aggregate", agg},
           {"warnings", warnings}};
  return out.dump(2);
}

std::string BenchReport::to_text() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-28s %11s %12s %12s %7s %9s %9s %s\n",
                "image", "pixels", "encoded", "png", "ratio", "enc MP/s",
                "dec MP/s", "ok");
  os << line;
  for (const auto& r : rows) {
    std::string base = r.baseline_bytes ? std::to_string(*r.baseline_bytes)
                                        : "-";
    std::string ratio = "-";
    if (auto q = r.ratio()) {
      char b[32];
      std::snprintf(b, sizeof b, "%.3f", *q);
      ratio = b;
    }
    std::snprintf(line, sizeof line,
                  "%-28s %11llu %12zu %12s %7s %9.2f %9.2f %s\n",
                  r.name.substr(0, 28).c_str(),
                  static_cast<unsigned long long>(r.pixels()), r.encoded_bytes,
                  base.c_str(), ratio.c_str(), r.encode_mps(), r.decode_mps(),
                  r.lossless ? "lossless" : "MISMATCH");
    os << line;
  }
  std::string ratio = "-";
  if (auto q = aggregate_ratio()) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3f", *q);
    ratio = b;
  }
  std::snprintf(line, sizeof line,
                "aggregate: %zu images, ratio %s, encode %.2f MP/s, decode "
                "%.2f MP/s, threads %d (peak concurrent blocks %d)\n",
                rows.size(), ratio.c_str(), aggregate_encode_mps(),
                aggregate_decode_mps(), threads, max_concurrent_blocks);
  os << line;
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

BenchRow bench_image(const std::string& name, const RasterImage& img,
                     std::optional<std::size_t> baseline_bytes,
                     const BenchOptions& options) {
  BenchRow row;
  row.name = name;
  row.width = img.width;
  row.height = img.height;
  row.channels = img.channels;
  row.bit_depth = img.bit_depth;
  row.raw_bytes = img.samples.size() * ((img.bit_depth + 7) / 8);
  row.baseline_bytes = baseline_bytes;

  EncodeOptions eo;
  eo.levels = options.levels;
  eo.rct = options.rct && img.channels == 3;
  eo.block_dim = options.block_dim;
  eo.policy.threads = options.threads;
  DecodeOptions dopt;
  dopt.policy.threads = options.threads;

  std::vector<uint8_t> bytes;
  RasterImage back;
  const int reps = std::max(1, options.repeats);
  row.encode_seconds = row.decode_seconds = INFINITY;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    bytes = encode_image(img, eo);
    row.encode_seconds = std::min(row.encode_seconds, seconds_since(t0));
    t0 = std::chrono::steady_clock::now();
    back = decode_image(bytes, dopt);
    row.decode_seconds = std::min(row.decode_seconds, seconds_since(t0));
  }
  row.encoded_bytes = bytes.size();
  row.lossless = back == img;
  return row;
}

BenchReport run_bench(const std::vector<fs::path>& inputs,
                      const BenchOptions& options) {
  BenchReport report;
  report.threads = options.threads;
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> entries;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file()) entries.push_back(e.path());
      }
      std::sort(entries.begin(), entries.end());
      for (const auto& p : entries) {
        const auto ext = lower(p.extension().string());
        if (is_pnm(p)) {
          files.push_back(p);
        } else if (ext == ".png") {
          // Baseline of a PNM sibling, or an input of its own.
          bool sibling = false;
          for (const char* e : {".pgm", ".ppm", ".pnm"}) {
            sibling = sibling || fs::exists(fs::path(p).replace_extension(e));
          }
          if (!sibling) files.push_back(p);
        }
      }
    } else {
      files.push_back(in);
    }
  }

  ConcurrencyProbe::reset();
  for (const auto& p : files) {
    RasterImage img;
    std::optional<std::size_t> baseline;
    if (is_pnm(p)) {
      img = read_pnm_file(p);
      const auto png = fs::path(p).replace_extension(".png");
      if (fs::exists(png)) {
        baseline = fs::file_size(png);
      } else {
        report.warnings.push_back("no PNG baseline for " + p.filename().string() +
                                  "; ratio omitted");
      }
    } else if (lower(p.extension().string()) == ".png") {
      img = read_png_file(p);
      baseline = fs::file_size(p);
    } else {
      throw Error(ErrorKind::kUnsupportedLayout,
                  "unsupported bench input: " + p.string());
    }
    report.rows.push_back(
        bench_image(p.filename().string(), img, baseline, options));
  }
  report.max_concurrent_blocks = ConcurrencyProbe::max_observed();
  return report;
}

RasterImage synthetic_image(uint32_t width, uint32_t height, uint32_t channels,
                            uint32_t bit_depth, uint64_t seed) {
  RasterImage img = RasterImage::create(width, height, channels, bit_depth);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double peak = img.max_value();
  for (uint32_t c = 0; c < channels; ++c) {
    const double gx = 0.3 + 0.4 * u(rng), gy = 0.3 + 0.4 * u(rng);
    const double f1 = 6.2831853 * (2 + 4 * u(rng)) / std::max(width, 1u);
    const double f2 = 6.2831853 * (3 + 5 * u(rng)) / std::max(height, 1u);
    const double ph = 6.28 * u(rng);
    std::mt19937 noise(static_cast<uint32_t>(seed * 31 + c));
    for (uint32_t y = 0; y < height; ++y) {
      for (uint32_t x = 0; x < width; ++x) {
        const double fx = width > 1 ? double(x) / (width - 1) : 0.0;
        const double fy = height > 1 ? double(y) / (height - 1) : 0.0;
        double v = 0.1 + 0.6 * (gx * fx + gy * fy) +
                   0.1 * std::sin(f1 * x + ph) * std::cos(f2 * y);
        v = v * peak + (static_cast<int>(noise() % 5) - 2) * peak / 255.0;
        img.at(c, x, y) = static_cast<uint16_t>(
            std::clamp(std::lround(v), 0L, static_cast<long>(peak)));
      }
    }
  }
  return img;
}

}  // namespace wbpc
