#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "opmi/bitvector.hpp"
#include "opmi/common.hpp"

namespace opmi {

class ByteWriter;
class ByteReader;

/// Wavelet tree with canonical Huffman shape: frequent symbols sit near the
/// root, so rank/access cost O(code length) = O(log sigma) worst case.
/// Symbols absent from the input have no code; rank for them is 0.
class HuffmanWaveletTree {
 public:
  void build(std::span<const Symbol> data, std::uint32_t sigma);

  /// Occurrences of c in [0, pos).
  std::uint64_t rank(Symbol c, std::uint64_t pos) const;

  /// (symbol at pos, occurrences of that symbol in [0, pos)) in one descent.
  std::pair<Symbol, std::uint64_t> access_rank(std::uint64_t pos) const;

  std::uint64_t size() const { return n_; }
  std::uint32_t sigma() const { return sigma_; }

  void save(ByteWriter& out) const;
  void load(ByteReader& in);

 private:
  struct Node {
    RankBitvector bits;
    std::int32_t child[2] = {-1, -1};  // -1 = leaf side not expanded
    Symbol leaf[2] = {0, 0};           // symbol when child[b] == -1
  };

  void assign_code_lengths(std::span<const std::uint64_t> freq);
  void build_trie();

  std::uint64_t n_ = 0;
  std::uint32_t sigma_ = 0;
  std::vector<std::uint8_t> code_len_;   // 0 = symbol absent
  std::vector<std::uint64_t> code_;      // canonical code, MSB-first in the low bits
  std::vector<Node> nodes_;              // nodes_[0] = root (absent when one distinct symbol)
  Symbol only_symbol_ = 0;               // degenerate single-symbol input
  bool single_ = false;
};

}  // namespace opmi
