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

#include "wbpc/entropy.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <string>

#include "wbpc/error.hpp"

namespace wbpc {

// ---------------------------------------------------------------------------
// Zero runs

std::vector<ZeroRun> find_zero_runs(const SymbolStream& stream) {
  std::vector<ZeroRun> runs;
  for (std::size_t slot = 0; slot < stream.plane_count(); ++slot) {
    const auto plane = stream.plane(slot);
    const std::size_t base = stream.plane_boundaries[slot];
    std::size_t i = 0;
    while (i < plane.size()) {
      if (plane[i] != 0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < plane.size() && plane[j] == 0) ++j;
      if (j - i >= 2) runs.push_back({base + i, j - i});
      i = j;
    }
  }
  return runs;
}

uint8_t select_zr_symbol(std::span<const uint8_t> symbols) {
  std::array<std::size_t, 256> count{};
  for (uint8_t s : symbols) ++count[s];
  return static_cast<uint8_t>(
      std::min_element(count.begin(), count.end()) - count.begin());
}

RunHistogram run_histogram(std::span<const ZeroRun> runs) {
  RunHistogram h;
  for (const auto& r : runs) ++h[r.length];
  return h;
}

std::array<std::size_t, 64> run_bit_classes(const RunHistogram& runs) {
  std::array<std::size_t, 64> f{};
  for (const auto& [length, count] : runs) {
    f[std::bit_width(static_cast<uint64_t>(length))] += count;
  }
  return f;
}

uint64_t run_cost(const RunHistogram& runs, unsigned zr_code_bits,
                  unsigned w) {
  const uint64_t chunk = (uint64_t{1} << w) - 1;
  uint64_t bits = 0;
  for (const auto& [length, count] : runs) {
    bits += count * ((length + chunk - 1) / chunk) * (w + zr_code_bits);
  }
  return bits;
}

unsigned optimize_counter_width(const RunHistogram& runs,
                                unsigned zr_code_bits, unsigned max_width) {
  max_width = std::clamp(max_width, kMinCounterWidth, kMaxCounterWidth);
  unsigned best = kMinCounterWidth;
  uint64_t best_cost = run_cost(runs, zr_code_bits, best);
  for (unsigned w = kMinCounterWidth + 1; w <= max_width; ++w) {
    const uint64_t c = run_cost(runs, zr_code_bits, w);
    if (c < best_cost) {
      best = w;
      best_cost = c;
    }
  }
  return best;
}

unsigned counter_width_limit(std::size_t symbol_count) {
  const unsigned b = symbol_count <= 1
                         ? 0
                         : static_cast<unsigned>(
                               std::bit_width(symbol_count - 1));  // ceil log2
  return std::clamp(b, kMinCounterWidth, kMaxCounterWidth);
}

// ---------------------------------------------------------------------------
// Huffman code

HuffmanCode::HuffmanCode(std::vector<HuffmanNode> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorKind::kMalformedTree, "empty tree");
  // Depth-first walk from the root assigning codewords.
  struct Frame {
    int32_t node;
    uint32_t code;
    unsigned depth;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.node < 0 || static_cast<std::size_t>(f.node) >= nodes_.size()) {
      throw Error(ErrorKind::kMalformedTree, "child index out of range");
    }
    ++visited;
    const HuffmanNode& n = nodes_[f.node];
    if (n.leaf()) {
      if (n.right >= 0) {
        throw Error(ErrorKind::kMalformedTree, "leaf with a child");
      }
      if (present_[n.symbol]) {
        throw Error(ErrorKind::kMalformedTree, "duplicate leaf symbol");
      }
      present_[n.symbol] = true;
      codes_[n.symbol] = f.code;
      lengths_[n.symbol] = static_cast<uint8_t>(f.depth);
      max_length_ = std::max(max_length_, f.depth);
      continue;
    }
    if (n.right < 0) throw Error(ErrorKind::kMalformedTree, "missing child");
    if (f.depth + 1 > kMaxCodewordLength) {
      throw Error(ErrorKind::kCodeTooLong, "codeword longer than 32 bits");
    }
    stack.push_back({n.right, (f.code << 1) | 1u, f.depth + 1});
    stack.push_back({n.left, f.code << 1, f.depth + 1});
  }
  if (visited != nodes_.size()) {
    throw Error(ErrorKind::kMalformedTree, "unreachable or shared nodes");
  }

  if (nodes_.size() == 1) return;
  table_.resize(std::size_t{1} << kTableBits);
  for (uint32_t prefix = 0; prefix < table_.size(); ++prefix) {
    int32_t node = 0;
    unsigned used = 0;
    while (!nodes_[node].leaf() && used < kTableBits) {
      const bool bit = (prefix >> (kTableBits - 1 - used)) & 1;
      node = bit ? nodes_[node].right : nodes_[node].left;
      ++used;
    }
    TableEntry& e = table_[prefix];
    if (nodes_[node].leaf()) {
      e.symbol = nodes_[node].symbol;
      e.length = static_cast<uint8_t>(used);
    } else {
      e.node = node;
    }
  }
}

uint8_t HuffmanCode::decode(BitReader& in) const {
  if (nodes_.size() == 1) return nodes_[0].symbol;
  const TableEntry& e = table_[in.peek(kTableBits)];
  if (e.length != 0) {
    in.skip(e.length);
    return e.symbol;
  }
  in.skip(kTableBits);
  int32_t node = e.node;
  while (!nodes_[node].leaf()) {
    node = in.read_bit() ? nodes_[node].right : nodes_[node].left;
  }
  return nodes_[node].symbol;
}

namespace {

struct BuildNode {
  uint64_t freq = 0;
  uint8_t min_symbol = 0;
  int32_t left = -1;
  int32_t right = -1;
  uint8_t symbol = 0;
};

void emit_preorder(const std::vector<BuildNode>& pool, int32_t id,
                   std::vector<HuffmanNode>& out) {
  const int32_t me = static_cast<int32_t>(out.size());
  out.push_back({});
  const BuildNode& b = pool[id];
  if (b.left < 0) {
    out[me].symbol = b.symbol;
    return;
  }
  out[me].left = static_cast<int32_t>(out.size());
  emit_preorder(pool, b.left, out);
  out[me].right = static_cast<int32_t>(out.size());
  emit_preorder(pool, b.right, out);
}

}  // namespace

HuffmanCode build_huffman(const Frequencies& freq) {
  std::vector<BuildNode> pool;
  pool.reserve(512);
  auto later = [&pool](int32_t a, int32_t b) {
    if (pool[a].freq != pool[b].freq) return pool[a].freq > pool[b].freq;
    return pool[a].min_symbol > pool[b].min_symbol;
  };
  std::priority_queue<int32_t, std::vector<int32_t>, decltype(later)> queue(
      later);
  for (unsigned s = 0; s < 256; ++s) {
    if (freq[s] == 0) continue;
    pool.push_back({freq[s], static_cast<uint8_t>(s), -1, -1,
                    static_cast<uint8_t>(s)});
    queue.push(static_cast<int32_t>(pool.size() - 1));
  }
  if (queue.empty()) {
    throw Error(ErrorKind::kEmptyAlphabet, "no symbol has nonzero frequency");
  }
  while (queue.size() > 1) {
    const int32_t a = queue.top();
    queue.pop();
    const int32_t b = queue.top();
    queue.pop();
    BuildNode parent;
    parent.freq = pool[a].freq + pool[b].freq;
    parent.min_symbol = std::min(pool[a].min_symbol, pool[b].min_symbol);
    parent.left = a;
    parent.right = b;
    pool.push_back(parent);
    queue.push(static_cast<int32_t>(pool.size() - 1));
  }
  std::vector<HuffmanNode> nodes;
  nodes.reserve(pool.size());
  emit_preorder(pool, queue.top(), nodes);
  return HuffmanCode(std::move(nodes));
}

void serialize_tree(const HuffmanCode& code, BitWriter& out) {
  for (const HuffmanNode& n : code.nodes()) {
    if (n.leaf()) {
      out.write(1, 1);
      out.write(n.symbol, 8);
    } else {
      out.write(0, 1);
    }
  }
}

std::vector<bool> serialize_tree(const HuffmanCode& code) {
  std::vector<bool> bits;
  for (const HuffmanNode& n : code.nodes()) {
    bits.push_back(n.leaf());
    if (n.leaf()) {
      for (int i = 7; i >= 0; --i) bits.push_back((n.symbol >> i) & 1);
    }
  }
  return bits;
}

namespace {

// Reads one subtree; returns its index.
int32_t parse_subtree(BitReader& in, std::vector<HuffmanNode>& nodes,
                      unsigned depth) {
  if (depth > kMaxCodewordLength || nodes.size() >= 511) {
    throw Error(ErrorKind::kMalformedTree, "tree too deep or too large");
  }
  const int32_t me = static_cast<int32_t>(nodes.size());
  nodes.push_back({});
  if (in.read_bit()) {
    nodes[me].symbol = static_cast<uint8_t>(in.read(8));
    return me;
  }
  const int32_t left = parse_subtree(in, nodes, depth + 1);
  const int32_t right = parse_subtree(in, nodes, depth + 1);
  nodes[me].left = left;
  nodes[me].right = right;
  return me;
}

}  // namespace

HuffmanCode parse_tree(BitReader& in) {
  std::vector<HuffmanNode> nodes;
  try {
    parse_subtree(in, nodes, 0);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kTruncated) {
      throw Error(ErrorKind::kMalformedTree, "tree encoding is truncated");
    }
    throw;
  }
  return HuffmanCode(std::move(nodes));
}

HuffmanCode parse_tree(const std::vector<bool>& bits) {
  BitWriter w;
  for (bool b : bits) w.write_bit(b);
  const std::vector<uint8_t> bytes = std::move(w).finish();
  BitReader in(bytes);
  HuffmanCode code = parse_tree(in);
  // The byte buffer is zero padded; reading into the padding means the
  // encoding ended early.
  if (in.position() > bits.size()) {
    throw Error(ErrorKind::kMalformedTree, "tree encoding is truncated");
  }
  if (in.position() != bits.size()) {
    throw Error(ErrorKind::kMalformedTree, "trailing bits after tree");
  }
  return code;
}

// ---------------------------------------------------------------------------
// Stream coding

namespace {

// Calls on_symbol(s) for every ordinary symbol, on_run(length) for every
// zero run and on_literal() for every literal zero-run symbol of a plane.
template <typename Symbol, typename Run, typename Literal>
void tokenize(std::span<const uint8_t> plane, uint8_t zr_symbol,
              Symbol&& on_symbol, Run&& on_run, Literal&& on_literal) {
  std::size_t i = 0;
  const std::size_t n = plane.size();
  while (i < n) {
    const uint8_t s = plane[i];
    if (s == 0 && i + 1 < n && plane[i + 1] == 0) {
      std::size_t j = i + 2;
      while (j < n && plane[j] == 0) ++j;
      on_run(j - i);
      i = j;
      continue;
    }
    if (s == zr_symbol) {
      on_literal();
    } else {
      on_symbol(s);
    }
    ++i;
  }
}

}  // namespace

Frequencies token_frequencies(const SymbolStream& stream,
                              std::span<const ZeroRun> runs, uint8_t zr_symbol,
                              unsigned counter_width) {
  Frequencies f{};
  const uint64_t chunk = (uint64_t{1} << counter_width) - 1;
  // Count every symbol, then move run zeros over to run chunks.
  for (uint8_t s : stream.symbols) ++f[s];
  for (const ZeroRun& r : runs) {
    f[0] -= r.length;
    f[zr_symbol] += (r.length + chunk - 1) / chunk;
  }
  return f;
}

StreamCoding plan_stream(const SymbolStream& stream) {
  StreamCoding out;
  if (stream.symbols.empty()) return out;
  RunLengthPlan& plan = out.plan;
  plan.zr_symbol = select_zr_symbol(stream.symbols);
  const std::vector<ZeroRun> runs = find_zero_runs(stream);
  plan.runs = run_histogram(runs);
  plan.width_limit = counter_width_limit(stream.symbols.size());

  // The zero-run codeword length depends on the token counts, which depend
  // on the counter width: size the code assuming one chunk per run, pick
  // the width for that codeword length, then rebuild with the real counts.
  const HuffmanCode first = build_huffman(
      token_frequencies(stream, runs, plan.zr_symbol, kMaxCounterWidth));
  plan.zr_code_bits = first.contains(plan.zr_symbol)
                          ? first.length(plan.zr_symbol)
                          : 0;
  plan.counter_width =
      optimize_counter_width(plan.runs, plan.zr_code_bits, plan.width_limit);
  out.code = build_huffman(
      token_frequencies(stream, runs, plan.zr_symbol, plan.counter_width));
  if (out.code.contains(plan.zr_symbol)) {
    plan.zr_code_bits = out.code.length(plan.zr_symbol);
  }
  return out;
}

std::vector<std::size_t> encode_stream(const SymbolStream& stream,
                                       uint8_t zr_symbol,
                                       unsigned counter_width,
                                       const HuffmanCode& code,
                                       BitWriter& out) {
  if (counter_width < kMinCounterWidth || counter_width > kMaxCounterWidth) {
    throw Error(ErrorKind::kInternal, "counter width out of range");
  }
  const std::size_t start = out.position();
  const uint32_t chunk = (1u << counter_width) - 1;
  std::vector<std::size_t> offsets;
  offsets.reserve(stream.plane_count());
  auto emit = [&](uint8_t s) {
    if (!code.contains(s)) {
      throw Error(ErrorKind::kInternal,
                  "symbol " + std::to_string(s) + " has no codeword");
    }
    code.encode(s, out);
  };
  for (std::size_t slot = 0; slot < stream.plane_count(); ++slot) {
    offsets.push_back(out.position() - start);
    tokenize(
        stream.plane(slot), zr_symbol, emit,
        [&](std::size_t length) {
          while (length > 0) {
            const auto n = static_cast<uint32_t>(
                std::min<std::size_t>(length, chunk));
            emit(zr_symbol);
            out.write(n, counter_width);
            length -= n;
          }
        },
        [&] {
          emit(zr_symbol);
          out.write(0, counter_width);
        });
  }
  return offsets;
}

void decode_plane(BitReader& in, const HuffmanCode& code, uint8_t zr_symbol,
                  unsigned counter_width, std::span<uint8_t> out) {
  std::size_t i = 0;
  const std::size_t n = out.size();
  while (i < n) {
    const uint8_t s = code.decode(in);
    if (s != zr_symbol) {
      out[i++] = s;
      continue;
    }
    const uint32_t count = in.read(counter_width);
    if (count == 0) {
      out[i++] = zr_symbol;
      continue;
    }
    if (count > n - i) {
      throw Error(ErrorKind::kMalformedPayload,
                  "zero run overflows the plane");
    }
    std::fill_n(out.begin() + i, count, uint8_t{0});
    i += count;
  }
}

SymbolStream decode_stream(BitReader& in, const HuffmanCode& code,
                           uint8_t zr_symbol, unsigned counter_width,
                           std::span<const std::size_t> plane_counts) {
  SymbolStream out;
  std::size_t total = 0;
  for (std::size_t c : plane_counts) {
    out.plane_boundaries.push_back(total);
    total += c;
  }
  out.symbols.resize(total);
  for (std::size_t slot = 0; slot < plane_counts.size(); ++slot) {
    decode_plane(in, code, zr_symbol, counter_width,
                 std::span<uint8_t>(out.symbols)
                     .subspan(out.plane_boundaries[slot], plane_counts[slot]));
  }
  return out;
}

}  // namespace wbpc
