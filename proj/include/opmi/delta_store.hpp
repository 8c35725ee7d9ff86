#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opmi/common.hpp"
#include "opmi/transform.hpp"

namespace opmi {

class ByteWriter;
class ByteReader;

/// Coding class of a position, decidable by both coder and decoder from the
/// order component and the already-decoded block values.
enum class ValueClass : std::uint8_t {
  minimal,       // order symbol 0: delta bounded by the block header m
  maximal,       // predecessor is the window maximum: bounded by the header M
  intermediate,  // bounded by the gap to the next larger window value
  raw_prefix,    // block-leading positions whose window may leave the block
  not_stored,    // strict equal-predecessor, or an intermediate with bound 1
};

/// T_delta cut into independently decodable blocks of `block_size` values.
/// Each block: header (m, M as self-delimiting codes), raw-coded prefix
/// (first value absolute, then in-block differences), then one bounded code
/// per remaining stored position. Blocks are byte-aligned.
struct CompressedDeltaStore {
  std::uint64_t n = 0;
  std::uint32_t block_size = 0;
  std::uint16_t q = 0;
  Mode mode = Mode::weak;
  Coder coder = Coder::lsk;
  std::vector<std::uint64_t> block_offsets;  // byte offset of each block in payload
  std::vector<std::uint8_t> payload;

  std::uint64_t block_count() const { return block_offsets.size(); }
  std::uint64_t block_begin(std::uint64_t k) const { return k * block_size; }  // 0-based
  std::uint64_t block_length(std::uint64_t k) const {
    std::uint64_t b = block_begin(k);
    return std::min<std::uint64_t>(block_size, n - b);
  }

  void save(ByteWriter& out) const;
  static CompressedDeltaStore load(ByteReader& in);
};

/// Class of position i (1-based) given the values before it. `prior` must
/// cover at least T[i_q .. i-1]; pass T[1..i-1].
ValueClass classify(std::uint64_t i, std::span<const Value> prior, Symbol to_i,
                    const OrderParams& params, std::uint32_t block_size);

CompressedDeltaStore compress_deltas(const Sequence& t, const OrderComponent& to,
                                     const DeltaComponent& td, std::uint32_t block_size,
                                     Coder coder, const OrderParams& params,
                                     Exec exec = Exec::serial);

/// Decodes block k completely. `to_slice` must hold the order symbols of every
/// position of the block. O(block_size) coder operations.
Sequence decompress_block(const CompressedDeltaStore& store, std::uint64_t k,
                          std::span<const Symbol> to_slice);

/// Returns T[start .. start+len-1] (1-based). `to_context` must cover
/// [blockStart(start) .. start+len-1]; windows spanning block boundaries
/// decode each touched block from its own head.
Sequence extract_window(const CompressedDeltaStore& store, std::uint64_t start, std::uint64_t len,
                        std::span<const Symbol> to_context);

/// Full reconstruction, block-parallel under Exec::parallel.
Sequence decompress_all(const CompressedDeltaStore& store, const OrderComponent& to,
                        Exec exec = Exec::serial);

}  // namespace opmi
