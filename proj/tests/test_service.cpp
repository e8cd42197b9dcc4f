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

#include <memory>
#include <random>
#include <string>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "test_util.hpp"
#include "wbpc/container.hpp"
#include "wbpc/png_io.hpp"
#include "wbpc/pnm.hpp"
#include "wbpc/tile_service.hpp"

using namespace wbpc;
using nlohmann::json;

namespace {

const std::string kData = WBPC_TEST_DATA;

ContainerReader make_reader(const RasterImage& img, EncodeOptions o) {
  return ContainerReader(encode_image(img, o));
}

RasterImage body_image(const HttpResponse& r) {
  std::vector<uint8_t> b(r.body.begin(), r.body.end());
  if (r.content_type == "image/png") return decode_png(b);
  return read_pnm(b);
}

}  // namespace

TEST_CASE("meta on the golden file") {
  TileService svc({{"golden", std::filesystem::path(kData + "/golden_4x4.wbpc")}});
  auto r = svc.handle("/meta", {});
  CHECK(r.status == 200);
  auto j = json::parse(r.body);
  CHECK(j["width"] == 4);
  CHECK(j["height"] == 4);
  CHECK(j["channels"] == 1);
  CHECK(j["bit_depth"] == 8);
  CHECK(j["levels"] == 1);
  CHECK(j["block_dim"] == 128);
  CHECK(j["max_planes_dropped"] == 9);
  CHECK(svc.handle("/healthz", {}).status == 200);
  CHECK(svc.handle("/images/golden/meta", {}).body == r.body);
  CHECK(svc.handle("/images/nope/meta", {}).status == 404);
  CHECK(svc.handle("/nothing", {}).status == 404);
}

TEST_CASE("tiles equal library region decodes") {
  std::mt19937 rng(4);
  auto img = test::natural_image(rng, 300, 170, 3, 8);
  std::vector<std::pair<std::string, ContainerReader>> v;
  v.emplace_back("a", make_reader(img, {.levels = 3, .rct = true, .block_dim = 64}));
  TileService svc(std::move(v));
  ContainerReader ref(encode_image(img, {.levels = 3, .rct = true, .block_dim = 64}));

  // Full frame at the top level equals the level decode.
  auto r = svc.handle("/tile/3/0/0", {{"size", "256"}});
  REQUIRE(r.status == 200);
  CHECK(r.content_type == "image/x-portable-pixmap");
  CHECK(body_image(r) == decode_image(ref, {.level = 3}));

  for (auto [l, x, y, q] : {std::tuple{0, 2, 1, 0}, {1, 1, 0, 2}, {0, 0, 0, 3}}) {
    TileService::Query query{{"size", "64"}, {"planes_dropped", std::to_string(q)}};
    auto t = svc.handle("/tile/" + std::to_string(l) + "/" + std::to_string(x) +
                            "/" + std::to_string(y),
                        query, "image/png");
    REQUIRE(t.status == 200);
    CHECK(t.content_type == "image/png");
    Rect rc{static_cast<uint32_t>(x * 64), static_cast<uint32_t>(y * 64), 0, 0};
    const Extent e = level_extent({300, 170}, l);
    rc.width = std::min<uint32_t>(64, e.width - rc.x);
    rc.height = std::min<uint32_t>(64, e.height - rc.y);
    CHECK(body_image(t) ==
          decode_region(ref, rc, {.level = l, .planes_dropped = static_cast<unsigned>(q)}));
  }
}

TEST_CASE("tile errors, clamping and validators") {
  std::mt19937 rng(5);
  auto img = test::random_image(rng, 50, 40, 1, 12);
  std::vector<std::pair<std::string, ContainerReader>> v;
  v.emplace_back("n", make_reader(img, {.levels = 2, .block_dim = 16}));
  TileService svc(std::move(v));

  CHECK(svc.handle("/tile/0/1/0", {{"size", "64"}}).status == 404);
  CHECK(svc.handle("/tile/3/0/0", {}).status == 404);
  CHECK(svc.handle("/tile/x/0/0", {}).status == 400);
  CHECK(svc.handle("/tile/0/0/0", {{"size", "0"}}).status == 400);
  CHECK(svc.handle("/tile/0/0/0", {{"size", "abc"}}).status == 400);
  CHECK(svc.handle("/tile/0/0/0", {{"planes_dropped", "-1"}}).status == 400);

  auto clamped = svc.handle("/tile/0/0/0", {{"planes_dropped", "500"}});
  CHECK(clamped.status == 200);
  auto max = svc.handle("/tile/0/0/0", {{"planes_dropped", clamped.headers["X-Planes-Dropped"]}});
  CHECK(clamped.body == max.body);
  for (auto s : body_image(clamped).samples) CHECK(s == 0);

  // 12-bit samples are scaled to 8 bits for display.
  auto t = svc.handle("/tile/0/0/0", {});
  CHECK(t.headers["X-Sample-Scale"] == "255/4095");
  auto shown = body_image(t);
  CHECK(shown.bit_depth == 8);
  CHECK(shown == to_display(crop(img, 0, 0, 50, 40)));

  const std::string tag = t.headers["ETag"];
  CHECK(tag.size() == 18);
  auto again = svc.handle("/tile/0/0/0", {}, "", tag);
  CHECK(again.status == 304);
  CHECK(again.body.empty());
  CHECK(svc.handle("/tile/0/0/0", {}, "", "\"other\"").status == 200);
}

TEST_CASE("http server round trip") {
  auto svc = std::make_shared<const TileService>(
      std::vector<std::pair<std::string, std::filesystem::path>>{
          {"golden", kData + "/golden_4x4.wbpc"}});
  TileServer server(svc);
  const int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client cli("127.0.0.1", port);
  auto h = cli.Get("/healthz");
  REQUIRE(h);
  CHECK(h->status == 200);
  auto m = cli.Get("/meta");
  REQUIRE(m);
  CHECK(json::parse(m->body)["levels"] == 1);
  auto t = cli.Get("/tile/1/0/0?size=8", {{"Accept", "image/png"}});
  REQUIRE(t);
  CHECK(t->status == 200);
  CHECK(t->get_header_value("Content-Type") == "image/png");
  const auto golden = read_file(kData + "/golden_4x4.wbpc");
  std::vector<uint8_t> body(t->body.begin(), t->body.end());
  CHECK(decode_png(body) == decode_image(golden, {.level = 1}));
  auto etag = t->get_header_value("ETag");
  auto cached = cli.Get("/tile/1/0/0?size=8",
                        {{"Accept", "image/png"}, {"If-None-Match", etag}});
  REQUIRE(cached);
  CHECK(cached->status == 304);
  auto missing = cli.Get("/tile/0/5/5");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  auto bad = cli.Get("/tile/0/0/0?planes_dropped=zz");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  server.stop();
}
