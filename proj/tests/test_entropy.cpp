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

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "wbpc/bitio.hpp"
#include "wbpc/entropy.hpp"
#include "wbpc/error.hpp"

using namespace wbpc;

namespace {

SymbolStream one_plane(std::vector<uint8_t> s) {
  SymbolStream out;
  out.symbols = std::move(s);
  out.plane_boundaries = {0};
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

std::string bits_of(const std::vector<uint8_t>& bytes, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i)
    s += (bytes[i / 8] >> (7 - i % 8)) & 1 ? '1' : '0';
  return s;
}

std::string code_str(const HuffmanCode& c, uint8_t s) {
  std::string out;
  for (unsigned i = c.length(s); i-- > 0;)
    out += (c.codeword(s) >> i) & 1 ? '1' : '0';
  return out;
}

// Minimum total coded length over all full binary trees, by enumerating
// merges. Small alphabets only.
uint64_t brute_force_optimum(std::vector<uint64_t> w) {
  if (w.size() <= 1) return 0;
  uint64_t best = UINT64_MAX;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      std::vector<uint64_t> next;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i && k != j) next.push_back(w[k]);
      next.push_back(w[i] + w[j]);
      best = std::min(best, w[i] + w[j] + brute_force_optimum(next));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("zero runs") {
  CHECK(find_zero_runs(one_plane({0, 0, 0, 0, 7})) ==
        std::vector<ZeroRun>{{0, 4}});
  CHECK(find_zero_runs(one_plane({0, 7, 0})).empty());
  SymbolStream split;
  split.symbols = {0, 0, 0, 0};
  split.plane_boundaries = {0, 2};
  CHECK(find_zero_runs(split) == std::vector<ZeroRun>{{0, 2}, {2, 2}});
  SymbolStream odd;
  odd.symbols = {0, 0, 0, 5, 0, 0};
  odd.plane_boundaries = {0, 1, 4};
  CHECK(find_zero_runs(odd) == std::vector<ZeroRun>{{1, 2}, {4, 2}});
}

TEST_CASE("zero-run symbol selection") {
  std::vector<uint8_t> s{0, 7, 7, 0, 0};
  CHECK(select_zr_symbol(s) == 1);
  std::vector<uint8_t> full;
  for (int v = 0; v < 256; ++v) {
    full.push_back(static_cast<uint8_t>(v));
    if (v != 200) full.push_back(static_cast<uint8_t>(v));
  }
  CHECK(select_zr_symbol(full) == 200);
  CHECK(select_zr_symbol(std::span<const uint8_t>{}) == 0);
}

TEST_CASE("counter width examples") {
  RunHistogram runs{{5, 1}, {300, 1}, {1000, 1}};
  CHECK(run_cost(runs, 3, 8) == 77);
  CHECK(run_cost(runs, 3, 10) == 39);
  CHECK(run_cost(runs, 3, 16) == 57);
  CHECK(optimize_counter_width(runs, 3, 16) == 10);
  CHECK(optimize_counter_width({}, 3, 16) == 2);
  RunHistogram three{{3, 1}};
  CHECK(run_cost(three, 1, 2) == 3);
  CHECK(optimize_counter_width(three, 1, 16) == 2);
  // The limit caps the search.
  CHECK(optimize_counter_width(runs, 3, 8) == 8);
}

TEST_CASE("bit classes") {
  RunHistogram runs{{2, 3}, {3, 1}, {4, 2}, {1000, 1}};
  auto f = run_bit_classes(runs);
  CHECK(f[2] == 4);
  CHECK(f[3] == 2);
  CHECK(f[10] == 1);
}

TEST_CASE("counter width limit") {
  CHECK(counter_width_limit(0) == 2);
  CHECK(counter_width_limit(4) == 2);
  CHECK(counter_width_limit(1000) == 10);
  CHECK(counter_width_limit(2048) == 11);
  CHECK(counter_width_limit(49152) == 16);
  CHECK(counter_width_limit(std::size_t{1} << 30) == 16);
}

TEST_CASE("optimizer agrees with exhaustive search") {
  std::mt19937 rng(31);
  for (int rep = 0; rep < 500; ++rep) {
    RunHistogram runs;
    const int n = rng() % 12;
    for (int i = 0; i < n; ++i) {
      std::size_t len = 2 + (rng() % 3 == 0 ? rng() % 60000 : rng() % 40);
      ++runs[len];
    }
    const unsigned l = 1 + rng() % 20;
    unsigned best = 2;
    uint64_t best_cost = UINT64_MAX;
    for (unsigned w = 2; w <= 16; ++w) {
      uint64_t c = 0;
      for (auto [len, cnt] : runs)
        c += cnt * ((len + (1u << w) - 2) / ((1u << w) - 1)) * (w + l);
      if (c < best_cost) {
        best_cost = c;
        best = w;
      }
    }
    REQUIRE(optimize_counter_width(runs, l, 16) == best);
  }
}

TEST_CASE("huffman examples") {
  Frequencies f{};
  f[0] = 5;
  f[1] = 2;
  f[2] = 1;
  auto c = build_huffman(f);
  CHECK(c.length(0) == 1);
  CHECK(c.length(1) == 2);
  CHECK(c.length(2) == 2);
  // {2, 1} merge to weight 3, which sorts below the leaf 0 of weight 5.
  CHECK(code_str(c, 2) == "00");
  CHECK(code_str(c, 1) == "01");
  CHECK(code_str(c, 0) == "1");

  Frequencies single{};
  single[9] = 7;
  auto s = build_huffman(single);
  CHECK(s.contains(9));
  CHECK(s.length(9) == 0);
  CHECK(s.nodes().size() == 1);

  Frequencies uni{};
  for (int i : {10, 20, 30, 40}) uni[i] = 1;
  auto u = build_huffman(uni);
  for (int i : {10, 20, 30, 40}) CHECK(u.length(i) == 2);

  Frequencies none{};
  CHECK(kind_of([&] { build_huffman(none); }) == ErrorKind::kEmptyAlphabet);
}

TEST_CASE("huffman codes are optimal, prefix free and complete") {
  std::mt19937 rng(8);
  for (int rep = 0; rep < 300; ++rep) {
    Frequencies f{};
    const int n = 2 + rng() % 7;
    std::vector<uint64_t> w;
    std::vector<uint8_t> syms;
    while (static_cast<int>(syms.size()) < n) {
      uint8_t s = rng() % 256;
      if (f[s]) continue;
      f[s] = 1 + rng() % 50;
      syms.push_back(s);
      w.push_back(f[s]);
    }
    auto c = build_huffman(f);
    double kraft = 0;
    uint64_t total = 0;
    for (auto s : syms) {
      kraft += std::ldexp(1.0, -static_cast<int>(c.length(s)));
      total += f[s] * c.length(s);
    }
    REQUIRE(kraft == doctest::Approx(1.0));
    REQUIRE(total == brute_force_optimum(w));
    for (auto a : syms)
      for (auto b : syms) {
        if (a == b || c.length(a) > c.length(b)) continue;
        const unsigned shift = c.length(b) - c.length(a);
        REQUIRE((c.codeword(b) >> shift) != c.codeword(a));
      }
  }
}

TEST_CASE("codeword length cap") {
  // Fibonacci weights produce a maximally skewed tree.
  Frequencies f{};
  uint64_t a = 1, b = 1;
  for (int i = 0; i < 34; ++i) {
    f[i] = a;
    const uint64_t next = a + b;
    a = b;
    b = next;
  }
  CHECK(kind_of([&] { build_huffman(f); }) == ErrorKind::kCodeTooLong);
  Frequencies ok{};
  a = 1;
  b = 1;
  for (int i = 0; i < 33; ++i) {
    ok[i] = a;
    const uint64_t next = a + b;
    a = b;
    b = next;
  }
  auto c = build_huffman(ok);
  CHECK(c.max_length() == 32);
  BitWriter w;
  for (int i = 0; i < 33; ++i) c.encode(static_cast<uint8_t>(i), w);
  auto bytes = std::move(w).finish();
  BitReader r(bytes);
  for (int i = 0; i < 33; ++i) CHECK(c.decode(r) == i);
}

TEST_CASE("tree serialization") {
  Frequencies single{};
  single[3] = 1;
  CHECK(serialize_tree(build_huffman(single)) ==
        std::vector<bool>{1, 0, 0, 0, 0, 0, 0, 1, 1});

  HuffmanCode t({{1, 2, 0}, {-1, -1, 0}, {3, 4, 0}, {-1, -1, 1},
                 {-1, -1, 2}});
  const std::vector<bool> want{0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0,
                               0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0};
  CHECK(serialize_tree(t) == want);
  CHECK(parse_tree(want) == t);
  CHECK(t.length(0) == 1);
  CHECK(t.length(2) == 2);

  std::vector<bool> truncated(want.begin(), want.end() - 3);
  CHECK(kind_of([&] { parse_tree(truncated); }) == ErrorKind::kMalformedTree);
  auto longer = want;
  longer.push_back(true);
  CHECK(kind_of([&] { parse_tree(longer); }) == ErrorKind::kMalformedTree);
  // A duplicated leaf symbol is not a valid code.
  std::vector<bool> dup{0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(kind_of([&] { parse_tree(dup); }) == ErrorKind::kMalformedTree);

  std::mt19937 rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    Frequencies f{};
    const int n = 1 + rng() % 256;
    for (int i = 0; i < n; ++i) f[rng() % 256] += 1 + rng() % 1000;
    auto c = build_huffman(f);
    REQUIRE(parse_tree(serialize_tree(c)) == c);
  }
}

TEST_CASE("stream encoding examples") {
  Frequencies f{};
  f[9] = 1;
  f[7] = 1;
  auto code = build_huffman(f);  // 7 -> "0", 9 -> "1"
  REQUIRE(code_str(code, 7) == "0");
  REQUIRE(code_str(code, 9) == "1");
  {
    BitWriter w;
    auto offs = encode_stream(one_plane({0, 0, 0, 0, 7}), 9, 3, code, w);
    const std::size_t n = w.position();
    CHECK(bits_of(std::move(w).finish(), n) == "1" "100" "0");
    CHECK(offs == std::vector<std::size_t>{0});
  }
  {
    BitWriter w;
    encode_stream(one_plane({9}), 9, 3, code, w);
    const std::size_t n = w.position();
    CHECK(bits_of(std::move(w).finish(), n) == "1" "000");
  }
  {
    BitWriter w;
    encode_stream(one_plane(std::vector<uint8_t>(9, 0)), 9, 3, code, w);
    const std::size_t n = w.position();
    auto bytes = std::move(w).finish();
    CHECK(bits_of(bytes, n) == "1111" "1010");
    BitReader r(bytes);
    const std::vector<std::size_t> counts{9};
    CHECK(decode_stream(r, code, 9, 3, counts).symbols ==
          std::vector<uint8_t>(9, 0));
  }
  BitWriter bad;
  CHECK(kind_of([&] { encode_stream(one_plane({1, 2}), 9, 3, code, bad); }) ==
        ErrorKind::kInternal);
}

TEST_CASE("stream decoding errors") {
  Frequencies f{};
  f[9] = 1;
  f[7] = 1;
  auto code = build_huffman(f);
  // Counter of 5 zeros where the plane only holds 3.
  BitWriter w;
  w.write(0b1101, 4);
  auto bytes = std::move(w).finish();
  BitReader r(bytes);
  const std::vector<std::size_t> three{3};
  CHECK(kind_of([&] { decode_stream(r, code, 9, 3, three); }) ==
        ErrorKind::kMalformedPayload);
  BitReader empty(std::span<const uint8_t>{});
  const std::vector<std::size_t> one{1};
  CHECK(kind_of([&] { decode_stream(empty, code, 9, 3, one); }) ==
        ErrorKind::kTruncated);
}

TEST_CASE("stream round trips across counter widths") {
  std::mt19937 rng(77);
  for (unsigned width = 2; width <= 16; ++width) {
    for (int rep = 0; rep < 20; ++rep) {
      SymbolStream s;
      const int planes = 1 + rng() % 5;
      for (int p = 0; p < planes; ++p) {
        s.plane_boundaries.push_back(s.symbols.size());
        const int n = 1 + rng() % 400;
        for (int i = 0; i < n; ++i) {
          const unsigned r = rng() % 10;
          if (r < 6) {
            s.symbols.push_back(0);
          } else if (r < 9) {
            s.symbols.push_back(static_cast<uint8_t>(rng() % 6));
          } else {
            s.symbols.push_back(static_cast<uint8_t>(rng()));
          }
        }
        if (rng() % 4 == 0) s.symbols.insert(s.symbols.end(), 5000, 0);
      }
      const auto runs = find_zero_runs(s);
      const uint8_t zr = rep % 2 ? 3 : select_zr_symbol(s.symbols);
      auto code = build_huffman(token_frequencies(s, runs, zr, width));
      BitWriter w;
      auto offs = encode_stream(s, zr, width, code, w);
      auto bytes = std::move(w).finish();
      std::vector<std::size_t> counts;
      for (std::size_t p = 0; p < s.plane_count(); ++p)
        counts.push_back(s.plane(p).size());
      BitReader r(bytes);
      REQUIRE(decode_stream(r, code, zr, width, counts) == s);
      // Each plane decodes on its own from its recorded offset.
      for (std::size_t p = 0; p < s.plane_count(); ++p) {
        BitReader pr(bytes);
        pr.seek(offs[p]);
        std::vector<uint8_t> out(counts[p]);
        decode_plane(pr, code, zr, width, out);
        REQUIRE(std::equal(out.begin(), out.end(), s.plane(p).begin()));
      }
    }
  }
}

TEST_CASE("planned coding picks the cheapest width for its code") {
  std::mt19937 rng(5);
  SymbolStream s;
  s.plane_boundaries = {0};
  for (int i = 0; i < 4096; ++i)
    s.symbols.push_back(rng() % 3 ? 0 : static_cast<uint8_t>(rng() % 16));
  auto sc = plan_stream(s);
  const auto runs = run_histogram(find_zero_runs(s));
  CHECK(sc.plan.zr_symbol == select_zr_symbol(s.symbols));
  CHECK(sc.plan.width_limit == counter_width_limit(s.symbols.size()));
  CHECK(sc.plan.counter_width >= kMinCounterWidth);
  CHECK(sc.plan.counter_width <= sc.plan.width_limit);
  CHECK(sc.code.contains(sc.plan.zr_symbol));
  BitWriter w;
  encode_stream(s, sc.plan.zr_symbol, sc.plan.counter_width, sc.code, w);
  auto bytes = std::move(w).finish();
  BitReader r(bytes);
  const std::vector<std::size_t> counts{s.symbols.size()};
  CHECK(decode_stream(r, sc.code, sc.plan.zr_symbol, sc.plan.counter_width,
                      counts) == s);
}
