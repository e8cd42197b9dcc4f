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

#include "wbpc/tile_service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "wbpc/block_codec.hpp"
#include "wbpc/error.hpp"
#include "wbpc/png_io.hpp"
#include "wbpc/pnm.hpp"

namespace wbpc {
namespace {

using nlohmann::json;

HttpResponse error_response(int status, const std::string& msg) {
  HttpResponse r;
  r.status = status;
  r.content_type = "application/json";
  r.body = json{{"error", msg}}.dump();
  return r;
}

HttpResponse json_response(const std::string& body) {
  HttpResponse r;
  r.content_type = "application/json";
  r.body = body;
  return r;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

// FNV-1a over the body. Strong validator: equal bytes, equal tag.
std::string content_tag(const std::string& body) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : body) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "\"%016llx\"",
                static_cast<unsigned long long>(h));
  return buf;
}

bool tag_matches(std::string_view header, const std::string& tag) {
  while (!header.empty()) {
    const auto comma = header.find(',');
    auto item = header.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "*" || item == tag) return true;
    if (comma == std::string_view::npos) break;
    header.remove_prefix(comma + 1);
  }
  return false;
}

const char* transform_name(ColorTransform t) {
  return t == ColorTransform::kRct ? "rct" : "none";
}

}  // namespace

bool tile_rect(const ContainerHeader& header, const TileRequest& req,
               Rect& out) {
  if (req.level < 0 || req.level > header.levels || req.size == 0) {
    return false;
  }
  const Extent e =
      level_extent({header.width, header.height}, req.level);
  const uint64_t x0 = uint64_t{req.x} * req.size;
  const uint64_t y0 = uint64_t{req.y} * req.size;
  if (x0 >= e.width || y0 >= e.height) return false;
  out.x = static_cast<uint32_t>(x0);
  out.y = static_cast<uint32_t>(y0);
  out.width = static_cast<uint32_t>(std::min<uint64_t>(req.size, e.width - x0));
  out.height =
      static_cast<uint32_t>(std::min<uint64_t>(req.size, e.height - y0));
  return true;
}

RasterImage to_display(const RasterImage& img) {
  const uint32_t channels = img.channels == 3 ? 3 : 1;
  if (img.bit_depth == 8 && channels == img.channels) return img;
  RasterImage out = RasterImage::create(img.width, img.height, channels, 8);
  const uint32_t peak = img.max_value();
  for (uint32_t c = 0; c < channels; ++c) {
    const auto src = img.channel(c);
    auto dst = out.channel(c);
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] = img.bit_depth == 8
                   ? src[i]
                   : static_cast<uint16_t>((src[i] * 255u + peak / 2) / peak);
    }
  }
  return out;
}

unsigned max_block_depth(const ContainerReader& reader) {
  unsigned d = 0;
  for (std::size_t i = 0; i < reader.layout().block_count(); ++i) {
    const auto b = reader.block_bytes(i);
    if (!b.empty()) d = std::max(d, static_cast<unsigned>(b[0] >> 2));
  }
  return d;
}

RasterImage render_tile(const ContainerReader& reader, const TileRequest& req,
                        const ExecutionPolicy& policy) {
  Rect rc;
  if (!tile_rect(reader.header(), req, rc)) {
    throw Error(ErrorKind::kIndex, "tile outside the grid");
  }
  DecodeOptions opt;
  opt.level = req.level;
  opt.planes_dropped = std::min(req.planes_dropped, max_block_depth(reader));
  opt.policy = policy;
  return decode_region(reader, rc, opt);
}

TileService::TileService(
    std::vector<std::pair<std::string, std::filesystem::path>> images,
    ExecutionPolicy policy)
    : policy_(policy) {
  for (auto& [id, path] : images) {
    auto reader = ContainerReader::open(path);
    const unsigned d = max_block_depth(reader);
    images_.push_back({id, std::move(reader), d});
  }
}

TileService::TileService(
    std::vector<std::pair<std::string, ContainerReader>> images,
    ExecutionPolicy policy)
    : policy_(policy) {
  for (auto& [id, reader] : images) {
    const unsigned d = max_block_depth(reader);
    images_.push_back({id, std::move(reader), d});
  }
}

std::string TileService::meta_json(std::size_t index) const {
  const Image& img = images_.at(index);
  const auto& h = img.reader.header();
  json levels = json::array();
  for (int l = 0; l <= h.levels; ++l) {
    const Extent e = level_extent({h.width, h.height}, l);
    levels.push_back({e.width, e.height});
  }
  json j{{"id", img.id},
         {"width", h.width},
         {"height", h.height},
         {"channels", h.channels},
         {"bit_depth", h.bit_depth},
         {"levels", h.levels},
         {"block_dim", h.block_dim},
         {"color_transform", transform_name(h.color)},
         {"max_planes_dropped", img.max_depth},
         {"tile_size", kDefaultTileSize},
         {"level_sizes", levels}};
  return j.dump();
}

HttpResponse TileService::handle(std::string_view path, const Query& query,
                                 std::string_view accept,
                                 std::string_view if_none_match) const {
  auto parts = split_path(path);
  if (parts.size() == 1 && parts[0] == "healthz") {
    HttpResponse r;
    r.content_type = "text/plain";
    r.body = "ok\n";
    return r;
  }
  if (parts.size() == 1 && parts[0] == "images") {
    json ids = json::array();
    for (const auto& img : images_) ids.push_back(img.id);
    return json_response(json{{"images", ids}}.dump());
  }
  std::size_t index = 0;
  if (!parts.empty() && parts[0] == "images") {
    if (parts.size() < 3) return error_response(404, "not found");
    auto it = std::find_if(images_.begin(), images_.end(),
                           [&](const Image& i) { return i.id == parts[1]; });
    if (it == images_.end()) return error_response(404, "unknown image");
    index = static_cast<std::size_t>(it - images_.begin());
    parts.erase(parts.begin(), parts.begin() + 2);
  }
  if (images_.empty()) return error_response(404, "no images");
  if (parts.size() == 1 && parts[0] == "meta") {
    return json_response(meta_json(index));
  }
  if (parts.size() == 4 && parts[0] == "tile") {
    return tile(images_[index], parts[1], parts[2], parts[3], query, accept,
                if_none_match);
  }
  return error_response(404, "not found");
}

HttpResponse TileService::tile(const Image& img, std::string_view level,
                               std::string_view x, std::string_view y,
                               const Query& query, std::string_view accept,
                               std::string_view if_none_match) const {
  TileRequest req;
  if (!parse_number(level, req.level) || !parse_number(x, req.x) ||
      !parse_number(y, req.y)) {
    return error_response(400, "tile coordinates must be integers");
  }
  if (auto it = query.find("planes_dropped"); it != query.end()) {
    if (!parse_number(std::string_view(it->second), req.planes_dropped)) {
      return error_response(400, "planes_dropped must be a non-negative integer");
    }
  }
  if (auto it = query.find("size"); it != query.end()) {
    if (!parse_number(std::string_view(it->second), req.size) ||
        req.size == 0 || req.size > kMaxTileSize) {
      return error_response(400, "size must be in [1, 4096]");
    }
  }
  const auto& h = img.reader.header();
  Rect rc;
  if (!tile_rect(h, req, rc)) return error_response(404, "tile out of range");
  req.planes_dropped = std::min(req.planes_dropped, img.max_depth);

  const RasterImage pixels = render_tile(img.reader, req, policy_);
  const RasterImage shown = to_display(pixels);
  const bool png = accept.find("image/png") != std::string_view::npos;
  HttpResponse r;
  if (png) {
    const auto bytes = encode_png(shown);
    r.body.assign(bytes.begin(), bytes.end());
    r.content_type = "image/png";
  } else {
    const auto bytes = write_pnm(shown);
    r.body.assign(bytes.begin(), bytes.end());
    r.content_type = shown.channels == 3 ? "image/x-portable-pixmap"
                                         : "image/x-portable-graymap";
  }
  const std::string tag = content_tag(r.body);
  r.headers["ETag"] = tag;
  r.headers["Cache-Control"] = "public, max-age=86400";
  r.headers["Vary"] = "Accept";
  r.headers["X-Planes-Dropped"] = std::to_string(req.planes_dropped);
  r.headers["X-Sample-Scale"] =
      "255/" + std::to_string(h.bit_depth == 8 ? 255u : (1u << h.bit_depth) - 1);
  r.headers["X-Tile-Rect"] = std::to_string(rc.x) + "," + std::to_string(rc.y) +
                             "," + std::to_string(rc.width) + "," +
                             std::to_string(rc.height);
  if (!if_none_match.empty() && tag_matches(if_none_match, tag)) {
    r.status = 304;
    r.body.clear();
  }
  return r;
}

struct TileServer::Impl {
  std::shared_ptr<const TileService> service;
  httplib::Server server;
  std::thread thread;

  void mount() {
    server.Get(".*", [this](const httplib::Request& req,
                            httplib::Response& res) {
      TileService::Query q(req.params.begin(), req.params.end());
      HttpResponse r;
      try {
        r = service->handle(req.path, q, req.get_header_value("Accept"),
                            req.get_header_value("If-None-Match"));
      } catch (const Error& e) {
        r = error_response(500, e.what());
      }
      res.status = r.status;
      for (const auto& [k, v] : r.headers) res.set_header(k, v);
      if (r.status != 304) res.set_content(r.body, r.content_type);
    });
  }
};

TileServer::TileServer(std::shared_ptr<const TileService> service)
    : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  impl_->mount();
}

TileServer::~TileServer() { stop(); }

int TileServer::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port
                                                                        : -1);
  if (bound < 0) throw Error(ErrorKind::kIo, "cannot bind " + host);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

bool TileServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

void TileServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace wbpc
