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

#ifndef WBPC_ENTROPY_HPP_
#define WBPC_ENTROPY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wbpc/bitio.hpp"
#include "wbpc/bitplane.hpp"

namespace wbpc {

inline constexpr unsigned kMinCounterWidth = 2;
inline constexpr unsigned kMaxCounterWidth = 16;
inline constexpr unsigned kMaxCodewordLength = 32;

// ---------------------------------------------------------------------------
// Zero runs

struct ZeroRun {
  std::size_t start = 0;
  std::size_t length = 0;

  bool operator==(const ZeroRun&) const = default;
};

// Maximal runs of two or more zero symbols; runs stop at plane boundaries.
std::vector<ZeroRun> find_zero_runs(const SymbolStream& stream);

// Least frequent symbol value, ties to the smallest value. Values that do
// not occur at all are eligible and therefore preferred.
uint8_t select_zr_symbol(std::span<const uint8_t> symbols);

// Run length -> number of runs with that length.
using RunHistogram = std::map<std::size_t, std::size_t>;

RunHistogram run_histogram(std::span<const ZeroRun> runs);

// F_i: number of runs whose length needs i bits (index i, 0..63).
std::array<std::size_t, 64> run_bit_classes(const RunHistogram& runs);

// Bits spent on run tokens at counter width w, with zr_code_bits the
// codeword length of the zero-run symbol. A run of length L is split into
// ceil(L / (2^w - 1)) (codeword, counter) pairs.
uint64_t run_cost(const RunHistogram& runs, unsigned zr_code_bits, unsigned w);

// Width in [2, max_width] minimizing run_cost; ties go to the smaller width.
unsigned optimize_counter_width(const RunHistogram& runs,
                                unsigned zr_code_bits, unsigned max_width);

// Upper bound on the counter width for a block of symbol_count bytes.
unsigned counter_width_limit(std::size_t symbol_count);

// ---------------------------------------------------------------------------
// Huffman code

// Tree stored in pre-order; node 0 is the root.
struct HuffmanNode {
  int32_t left = -1;
  int32_t right = -1;
  uint8_t symbol = 0;

  bool leaf() const { return left < 0; }
  bool operator==(const HuffmanNode&) const = default;
};

class HuffmanCode {
 public:
  HuffmanCode() = default;
  // Takes a pre-order tree; throws kMalformedTree / kCodeTooLong.
  explicit HuffmanCode(std::vector<HuffmanNode> nodes);

  const std::vector<HuffmanNode>& nodes() const { return nodes_; }
  bool contains(uint8_t s) const { return present_[s]; }
  unsigned length(uint8_t s) const { return lengths_[s]; }
  uint32_t codeword(uint8_t s) const { return codes_[s]; }
  unsigned max_length() const { return max_length_; }

  void encode(uint8_t s, BitWriter& out) const {
    out.write(codes_[s], lengths_[s]);
  }
  uint8_t decode(BitReader& in) const;

  bool operator==(const HuffmanCode& o) const { return nodes_ == o.nodes_; }

 private:
  static constexpr unsigned kTableBits = 10;
  struct TableEntry {
    uint8_t symbol = 0;
    uint8_t length = 0;  // 0: continue from node
    int32_t node = 0;
  };

  std::vector<HuffmanNode> nodes_;
  std::array<uint32_t, 256> codes_{};
  std::array<uint8_t, 256> lengths_{};
  std::array<bool, 256> present_{};
  unsigned max_length_ = 0;
  std::vector<TableEntry> table_;
};

using Frequencies = std::array<uint64_t, 256>;

// Repeatedly merges the two lowest (frequency, smallest contained symbol)
// subtrees; the lower one becomes the left (0) child. A single symbol gets a
// one-leaf tree with zero-length codewords. Throws kEmptyAlphabet when every
// frequency is zero and kCodeTooLong beyond 32-bit codewords.
HuffmanCode build_huffman(const Frequencies& freq);

// Pre-order: 0 for an internal node, 1 + 8-bit symbol for a leaf.
void serialize_tree(const HuffmanCode& code, BitWriter& out);
std::vector<bool> serialize_tree(const HuffmanCode& code);
HuffmanCode parse_tree(BitReader& in);
HuffmanCode parse_tree(const std::vector<bool>& bits);

// ---------------------------------------------------------------------------
// Stream coding

struct RunLengthPlan {
  uint8_t zr_symbol = 0;
  unsigned counter_width = kMinCounterWidth;
  RunHistogram runs;
  unsigned zr_code_bits = 0;
  unsigned width_limit = kMinCounterWidth;
};

// Token frequencies for a given zero-run symbol and counter width: ordinary
// symbols plus one zr_symbol per run chunk or literal occurrence.
Frequencies token_frequencies(const SymbolStream& stream,
                              std::span<const ZeroRun> runs, uint8_t zr_symbol,
                              unsigned counter_width);

// Chooses the zero-run symbol, counter width and Huffman code for a stream.
struct StreamCoding {
  RunLengthPlan plan;
  HuffmanCode code;
};
StreamCoding plan_stream(const SymbolStream& stream);

// Writes every plane of the stream and returns the bit offset (relative to
// the writer position at entry) at which each plane starts.
std::vector<std::size_t> encode_stream(const SymbolStream& stream,
                                       uint8_t zr_symbol,
                                       unsigned counter_width,
                                       const HuffmanCode& code,
                                       BitWriter& out);

// Decodes exactly out.size() symbols of one plane.
void decode_plane(BitReader& in, const HuffmanCode& code, uint8_t zr_symbol,
                  unsigned counter_width, std::span<uint8_t> out);

SymbolStream decode_stream(BitReader& in, const HuffmanCode& code,
                           uint8_t zr_symbol, unsigned counter_width,
                           std::span<const std::size_t> plane_counts);

}  // namespace wbpc

#endif  // WBPC_ENTROPY_HPP_
