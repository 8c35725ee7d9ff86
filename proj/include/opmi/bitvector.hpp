#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "opmi/common.hpp"

namespace opmi {

/// Plain bitvector with O(1) rank. Rank blocks cover 512 bits (8 words) and
/// are rebuilt after bulk construction or load; they are not serialized.
class RankBitvector {
 public:
  RankBitvector() = default;
  explicit RankBitvector(std::uint64_t nbits) { resize(nbits); }

  void resize(std::uint64_t nbits) {
    nbits_ = nbits;
    words_.assign((nbits + 63) / 64, 0);
  }

  void push_back(bool b) {
    if (nbits_ % 64 == 0) words_.push_back(0);
    if (b) words_[nbits_ >> 6] |= std::uint64_t{1} << (nbits_ & 63);
    ++nbits_;
  }

  void set(std::uint64_t pos) { words_[pos >> 6] |= std::uint64_t{1} << (pos & 63); }

  bool get(std::uint64_t pos) const { return (words_[pos >> 6] >> (pos & 63)) & 1u; }

  std::uint64_t size() const { return nbits_; }

  /// Number of set bits in [0, pos). Requires build_rank() after mutation.
  std::uint64_t rank1(std::uint64_t pos) const {
    std::uint64_t block = pos >> 9;
    std::uint64_t r = super_[block];
    std::uint64_t w = block << 3;
    std::uint64_t end = pos >> 6;
    for (; w < end; ++w) r += std::popcount(words_[w]);
    if (pos & 63) r += std::popcount(words_[end] & ((std::uint64_t{1} << (pos & 63)) - 1));
    return r;
  }

  std::uint64_t ones() const { return nbits_ == 0 ? 0 : rank1(nbits_); }

  void build_rank() {
    super_.assign(words_.size() / 8 + 2, 0);
    std::uint64_t acc = 0;
    for (std::uint64_t w = 0; w < words_.size(); ++w) {
      if ((w & 7) == 0) super_[w >> 3] = acc;
      acc += std::popcount(words_[w]);
    }
    super_[(words_.size() + 7) / 8] = acc;
    // cover queries with pos >> 9 == words/8 exactly
    if (words_.size() % 8 == 0) super_[words_.size() / 8] = acc;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

 private:
  std::uint64_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> super_;
};

}  // namespace opmi
