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

// wbpc: encode, decode, inspect, benchmark and serve wavelet bitplane
// containers.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wbpc/bench.hpp"
#include "wbpc/container.hpp"
#include "wbpc/error.hpp"
#include "wbpc/png_io.hpp"
#include "wbpc/pnm.hpp"
#include "wbpc/tile_service.hpp"

namespace fs = std::filesystem;
using namespace wbpc;

namespace {

bool has_ext(const fs::path& p, const char* ext) {
  return p.extension() == ext;
}

void save_output(const fs::path& p, const RasterImage& img) {
  if (has_ext(p, ".png")) {
    write_file(p, encode_png(img, 9));
  } else {
    write_pnm_file(p, img);
  }
}

Rect parse_region(const std::string& s) {
  Rect r;
  unsigned v[4];
  char tail;
  if (std::sscanf(s.c_str(), "%u,%u,%u,%u%c", &v[0], &v[1], &v[2], &v[3],
                  &tail) != 4) {
    throw Error(ErrorKind::kDomain, "region must be x,y,w,h");
  }
  r.x = v[0];
  r.y = v[1];
  r.width = v[2];
  r.height = v[3];
  return r;
}

std::string info_text(const ContainerReader& r) {
  const auto& h = r.header();
  const auto& l = r.layout();
  std::ostringstream os;
  os << "format      WBPC v" << int(kVersion) << "\n"
     << "size        " << h.width << " x " << h.height << "\n"
     << "channels    " << h.channels << "\n"
     << "bit depth   " << h.bit_depth << "\n"
     << "color       " << (h.color == ColorTransform::kRct ? "rct" : "none")
     << "\n"
     << "levels      " << h.levels << "\n"
     << "block dim   " << h.block_dim << "\n"
     << "blocks      " << l.block_count() << "\n";
  const auto ll = l.grid(h.levels, BlockKind::kLowPass);
  const Extent e = l.level_extent(h.levels);
  os << "grid LL" << h.levels << "   " << e.width << "x" << e.height << " -> "
     << ll.cols << "x" << ll.rows << " tiles\n";
  for (int lv = h.levels; lv >= 1; --lv) {
    const auto g = l.grid(lv, BlockKind::kHighPass);
    const Extent b = l.band_extent(lv, kBandLH);
    os << "grid HP" << lv << "   " << b.width << "x" << b.height << " -> "
       << g.cols << "x" << g.rows << " tiles\n";
  }
  const auto st = container_stats(r);
  os << "depth histogram";
  for (auto [d, n] : st.depth_histogram) os << "  d=" << d << ":" << n;
  os << "\n"
     << "file header + index  " << st.header_bytes << " bytes\n"
     << "block headers        " << (st.block_header_bits + 7) / 8
     << " bytes (" << st.block_header_bits << " bits)\n"
     << "payload              " << st.payload_bits / 8 << " bytes ("
     << st.payload_bits << " bits)\n"
     << "total                " << r.bytes().size() << " bytes\n";
  return os.str();
}

std::string info_json(const ContainerReader& r) {
  using nlohmann::json;
  const auto& h = r.header();
  const auto& l = r.layout();
  const auto st = container_stats(r);
  json grids = json::array();
  {
    const auto g = l.grid(h.levels, BlockKind::kLowPass);
    const Extent e = l.level_extent(h.levels);
    grids.push_back({{"level", h.levels},
                     {"kind", "low"},
                     {"band_width", e.width},
                     {"band_height", e.height},
                     {"cols", g.cols},
                     {"rows", g.rows}});
  }
  for (int lv = h.levels; lv >= 1; --lv) {
    const auto g = l.grid(lv, BlockKind::kHighPass);
    const Extent b = l.band_extent(lv, kBandLH);
    grids.push_back({{"level", lv},
                     {"kind", "high"},
                     {"band_width", b.width},
                     {"band_height", b.height},
                     {"cols", g.cols},
                     {"rows", g.rows}});
  }
  json hist = json::object();
  for (auto [d, n] : st.depth_histogram) hist[std::to_string(d)] = n;
  json j{{"version", kVersion},
         {"width", h.width},
         {"height", h.height},
         {"channels", h.channels},
         {"bit_depth", h.bit_depth},
         {"color_transform", h.color == ColorTransform::kRct ? "rct" : "none"},
         {"levels", h.levels},
         {"block_dim", h.block_dim},
         {"blocks", l.block_count()},
         {"grids", grids},
         {"depth_histogram", hist},
         {"header_bytes", st.header_bytes},
         {"block_header_bits", st.block_header_bits},
         {"payload_bits", st.payload_bits},
         {"file_bytes", r.bytes().size()}};
  return j.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet bitplane codec"};
  app.require_subcommand(1);

  // encode
  auto* enc = app.add_subcommand("encode", "Encode a PGM/PPM image");
  std::string enc_in, enc_out;
  int enc_levels = -1, enc_threads = 0;
  bool enc_rct = false;
  unsigned enc_quality = 0;
  uint32_t enc_block = kDefaultBlockDim;
  enc->add_option("input", enc_in, "PGM or PPM input")->required();
  enc->add_option("output", enc_out, "Container output")->required();
  enc->add_option("--levels", enc_levels, "Wavelet levels (default: auto)")
      ->check(CLI::Range(0, 8));
  enc->add_flag("--rct", enc_rct, "Apply the reversible color transform");
  enc->add_option("--quality", enc_quality,
                  "Drop this many least significant planes per block");
  enc->add_option("--block-dim", enc_block, "Tile size (multiple of 4)");
  enc->add_option("--threads", enc_threads, "Worker threads (0: all)");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode to PGM/PPM (or PNG)");
  std::string dec_in, dec_out, dec_region;
  int dec_level = 0, dec_threads = 0;
  unsigned dec_quality = 0;
  dec->add_option("input", dec_in, "Container input")->required();
  dec->add_option("output", dec_out, "Image output")->required();
  dec->add_option("--level", dec_level, "Resolution level (0: full)");
  dec->add_option("--quality", dec_quality, "Planes dropped per block");
  dec->add_option("--region", dec_region, "x,y,w,h in level pixels");
  dec->add_option("--threads", dec_threads, "Worker threads (0: all)");

  // info
  auto* info = app.add_subcommand("info", "Describe a container");
  std::string info_in;
  bool info_as_json = false;
  info->add_option("input", info_in, "Container")->required();
  info->add_flag("--json", info_as_json, "JSON output");

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark against PNG baselines");
  std::vector<std::string> bench_in;
  BenchOptions bopt;
  std::string bench_synth, bench_out;
  bool bench_json = false;
  bench->add_option("inputs", bench_in, "Images or directories");
  bench->add_option("--threads", bopt.threads, "Worker threads")
      ->default_val(1);
  bench->add_option("--levels", bopt.levels, "Wavelet levels (default: auto)");
  bench->add_option("--repeats", bopt.repeats, "Best-of timing repeats");
  bench->add_option("--synthetic", bench_synth,
                    "Add a synthetic WxH 8-bit RGB image (e.g. 4096x4096)");
  bench->add_flag("--json", bench_json, "JSON report");
  bench->add_option("--output", bench_out, "Also write the report here");

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP tile service");
  std::vector<std::string> serve_in;
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080, serve_threads = 0;
  serve->add_option("containers", serve_in, "Containers; id = file stem")
      ->required();
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Port");
  serve->add_option("--threads", serve_threads, "Decode threads per request");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) {
      const RasterImage img = read_pnm_file(enc_in);
      EncodeOptions o;
      o.levels = enc_levels;
      o.rct = enc_rct;
      o.block_dim = enc_block;
      o.policy.threads = enc_threads;
      auto bytes = encode_image(img, o);
      if (enc_quality > 0) bytes = truncate_stream(bytes, enc_quality, o.policy);
      write_file(enc_out, bytes);
    } else if (*dec) {
      const auto reader = ContainerReader::open(dec_in);
      DecodeOptions o;
      o.level = dec_level;
      o.planes_dropped = dec_quality;
      o.policy.threads = dec_threads;
      const RasterImage img =
          dec_region.empty()
              ? decode_image(reader, o)
              : decode_region(reader, parse_region(dec_region), o);
      save_output(dec_out, img);
    } else if (*info) {
      const auto reader = ContainerReader::open(info_in);
      std::cout << (info_as_json ? info_json(reader) + "\n"
                                 : info_text(reader));
    } else if (*bench) {
      std::vector<fs::path> inputs(bench_in.begin(), bench_in.end());
      BenchReport report = run_bench(inputs, bopt);
      if (!bench_synth.empty()) {
        unsigned w = 0, h = 0;
        if (std::sscanf(bench_synth.c_str(), "%ux%u", &w, &h) != 2 || !w ||
            !h) {
          throw Error(ErrorKind::kDomain, "--synthetic expects WxH");
        }
        const RasterImage img = synthetic_image(w, h, 3, 8);
        ConcurrencyProbe::reset();
        report.rows.push_back(bench_image("synthetic-" + bench_synth, img,
                                          std::nullopt, bopt));
        report.max_concurrent_blocks =
            std::max(report.max_concurrent_blocks,
                     ConcurrencyProbe::max_observed());
        report.warnings.push_back("no PNG baseline for synthetic-" +
                                  bench_synth + "; ratio omitted");
      }
      if (report.rows.empty()) {
        throw Error(ErrorKind::kDomain, "bench: no inputs");
      }
      const std::string out = bench_json ? report.to_json() + "\n"
                                         : report.to_text();
      std::cout << out;
      if (!bench_out.empty()) {
        write_file(bench_out, std::span(
                                  reinterpret_cast<const uint8_t*>(out.data()),
                                  out.size()));
      }
      for (const auto& r : report.rows) {
        if (!r.lossless) return 2;
      }
    } else if (*serve) {
      std::vector<std::pair<std::string, fs::path>> images;
      for (const auto& p : serve_in) {
        images.emplace_back(fs::path(p).stem().string(), p);
      }
      auto service = std::make_shared<const TileService>(
          images, ExecutionPolicy{serve_threads});
      TileServer server(service);
      std::cerr << "serving " << images.size() << " image(s) on http://"
                << serve_host << ":" << serve_port << "\n";
      if (!server.listen(serve_host, serve_port)) {
        throw Error(ErrorKind::kIo, "cannot listen on port " +
                                        std::to_string(serve_port));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "wbpc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
