#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opmi/bitvector.hpp"
#include "opmi/common.hpp"
#include "opmi/transform.hpp"
#include "opmi/wavelet_tree.hpp"

namespace opmi {

class ByteWriter;
class ByteReader;

/// Inclusive range of suffix-array rows; lo > hi means empty.
struct RowRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const RowRange&, const RowRange&) = default;
};

/// Compressed suffix array over an order component: BWT of the symbol string
/// plus a unique smallest sentinel, a Huffman-shaped wavelet tree for rank,
/// the C array, and suffix positions sampled at every block start.
class CsaIndex {
 public:
  CsaIndex() = default;

  static CsaIndex build(const OrderComponent& to, std::uint32_t block_size,
                        const OrderParams& params);

  std::uint64_t text_length() const { return n_; }
  std::uint64_t row_count() const { return n_ + 1; }
  std::uint32_t block_size() const { return block_size_; }
  std::uint32_t alphabet_size() const { return sigma_; }

  RowRange full_range() const { return {0, n_}; }

  /// Range of rows prefixed by c . alpha, given the range of rows prefixed by
  /// alpha. O(log sigma).
  RowRange extend(RowRange range, Symbol c) const;

  /// Fold of extend over s back-to-front; empty pattern gives the full range.
  RowRange search(std::span<const Symbol> s) const;

  /// LF step: returns the row of the preceding text position and the symbol
  /// read while stepping (-1 when that symbol is the sentinel, i.e. the
  /// current suffix starts at text position 1).
  std::pair<std::uint64_t, std::int32_t> lf_step(std::uint64_t row) const;

  struct Located {
    std::uint64_t pos = 0;    // 1-based text position of the row's suffix
    std::uint64_t block = 0;  // enclosing block number, pos in [block*B+1, block*B+B]
    std::vector<Symbol> prefix;  // T_o[block*B+1 .. pos-1]
  };

  /// Walks LF until a sampled row, collecting the symbols passed over.
  /// At most B-1 steps. `row` must not be the sentinel row (row 0).
  Located locate_with_context(std::uint64_t row) const;

  /// Recovers the full order component in O(n log sigma) by walking LF from
  /// the sentinel row.
  OrderComponent recover_text() const;

  void save(ByteWriter& out) const;
  static CsaIndex load(ByteReader& in);

 private:
  std::uint64_t n_ = 0;
  std::uint32_t block_size_ = 0;
  std::uint32_t sigma_ = 0;  // shifted alphabet size including the sentinel
  std::uint32_t q_ = 0;
  Mode mode_ = Mode::weak;
  HuffmanWaveletTree wt_;
  std::vector<std::uint64_t> c_;        // c_[s] = rows whose suffix starts with a symbol < s
  RankBitvector sampled_;               // per row: suffix position is a block start
  std::vector<std::uint32_t> sample_block_;  // block number, indexed by sampled_.rank1(row)
};

}  // namespace opmi
