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

#ifndef WBPC_TILE_SERVICE_HPP_
#define WBPC_TILE_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wbpc/container.hpp"
#include "wbpc/image.hpp"

namespace wbpc {

inline constexpr uint32_t kDefaultTileSize = 256;
inline constexpr uint32_t kMaxTileSize = 4096;

struct TileRequest {
  int level = 0;
  uint32_t x = 0;
  uint32_t y = 0;
  unsigned planes_dropped = 0;
  uint32_t size = kDefaultTileSize;
};

// Pixel rectangle of tile (x, y) at its level; edge tiles are cut to the
// level extent. Returns false when the tile lies outside the grid.
bool tile_rect(const ContainerHeader& header, const TileRequest& req,
               Rect& out);

// Linear rescale to 8 bits: v * 255 / (2^B - 1), rounded. 8-bit input is
// returned unchanged. Images with a channel count other than 3 keep only
// the first channel.
RasterImage to_display(const RasterImage& img);

// Tile pixels before display scaling. planes_dropped is clamped to the
// container's deepest block.
RasterImage render_tile(const ContainerReader& reader, const TileRequest& req,
                        const ExecutionPolicy& policy = {});

// Largest d over all blocks of the container.
unsigned max_block_depth(const ContainerReader& reader);

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Read-only tile server over one or more containers. The first image is
// also reachable without an id:
//   GET /healthz
//   GET /images
//   GET /meta                       GET /images/{id}/meta
//   GET /tile/{level}/{x}/{y}       GET /images/{id}/tile/{level}/{x}/{y}
// Tile queries: planes_dropped=n, size=s. Accept: image/png selects PNG,
// anything else binary PPM/PGM.
class TileService {
 public:
  using Query = std::multimap<std::string, std::string>;

  explicit TileService(
      std::vector<std::pair<std::string, std::filesystem::path>> images,
      ExecutionPolicy policy = {});
  TileService(std::vector<std::pair<std::string, ContainerReader>> images,
              ExecutionPolicy policy = {});

  HttpResponse handle(std::string_view path, const Query& query,
                      std::string_view accept = {},
                      std::string_view if_none_match = {}) const;

  std::string meta_json(std::size_t image) const;
  std::size_t image_count() const { return images_.size(); }

 private:
  struct Image {
    std::string id;
    ContainerReader reader;
    unsigned max_depth = 0;
  };

  HttpResponse tile(const Image& img, std::string_view level,
                    std::string_view x, std::string_view y,
                    const Query& query, std::string_view accept,
                    std::string_view if_none_match) const;

  std::vector<Image> images_;
  ExecutionPolicy policy_;
};

// Runs a TileService behind cpp-httplib.
class TileServer {
 public:
  explicit TileServer(std::shared_ptr<const TileService> service);
  ~TileServer();
  TileServer(const TileServer&) = delete;
  TileServer& operator=(const TileServer&) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  // Returns the bound port.
  int start(const std::string& host, int port);
  // Binds and serves on the calling thread until stop().
  bool listen(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wbpc

#endif  // WBPC_TILE_SERVICE_HPP_
